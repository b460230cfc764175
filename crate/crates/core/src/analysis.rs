use crate::caps::Caps;
use crate::error::Result;
use crate::group::GroupTable;
use crate::lattice::{enumerate_subgroups, SubgroupLattice};
use crate::socle::{compute_socle_data, is_socle_friendly, SocleData, SocleFriendliness};

/// A group together with its subgroup lattice and socle data.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub group: GroupTable,
    pub lattice: SubgroupLattice,
    pub socle: SocleData,
    pub friendliness: SocleFriendliness,
}

impl Analysis {
    pub fn new(group: GroupTable, caps: &Caps) -> Result<Self> {
        let lattice = enumerate_subgroups(&group, caps)?;
        let socle = compute_socle_data(&group, &lattice)?;
        let friendliness = is_socle_friendly(&group, &lattice, &socle);
        Ok(Analysis {
            group,
            lattice,
            socle,
            friendliness,
        })
    }

    pub fn order(&self) -> u64 {
        self.group.order() as u64
    }

    pub fn is_socle_friendly(&self) -> bool {
        self.friendliness.friendly
    }
}
