//! Minimal normal subgroups, the socle, relative cores and dimension.
//!
//! The normal subgroups inside the socle form an atomic lattice whose atoms
//! are the minimal normal subgroups; the dimension of a member is the number
//! of atoms in any direct-product decomposition of it. The relative core of
//! a subgroup `H` is `core(H) ∩ soc(G)`, equivalently the join of the
//! minimal normal subgroups contained in `H`.

use std::collections::HashMap;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::group::{center, GroupTable};
use crate::lattice::{SubgroupId, SubgroupLattice};

#[derive(Clone, Debug)]
pub struct SocleData {
    minimal_normals: Vec<SubgroupId>,
    socle: SubgroupId,
    tee: Vec<SubgroupId>,
    dims: HashMap<SubgroupId, usize>,
    dim_g: usize,
    relative_cores: Vec<SubgroupId>,
}

/// Normal subgroups `N ≠ 1` with no normal subgroup strictly between `1` and `N`.
pub fn minimal_normal_subgroups(lattice: &SubgroupLattice) -> Vec<SubgroupId> {
    let normals = lattice.normal_ids();
    normals
        .iter()
        .copied()
        .filter(|&n| n != lattice.trivial())
        .filter(|&n| {
            !normals
                .iter()
                .any(|&m| m != lattice.trivial() && m != n && lattice.includes(m, n))
        })
        .collect()
}

/// Counts the atoms picked by a greedy decomposition of `t` that scans the
/// minimal normal subgroups in the given order.
pub fn decomposition_length(
    g: &GroupTable,
    lattice: &SubgroupLattice,
    atoms: &[SubgroupId],
    t: SubgroupId,
) -> Result<usize> {
    let mut running = lattice.trivial();
    let mut steps = 0;
    for &n in atoms {
        if running == t {
            break;
        }
        if lattice.includes(n, t) && !lattice.includes(n, running) {
            running = lattice.join(g, running, n);
            steps += 1;
        }
    }
    if running != t {
        return Err(Error::DimensionInconsistency(format!(
            "subgroup {t} is not a join of minimal normal subgroups"
        )));
    }
    Ok(steps)
}

pub fn compute_socle_data(g: &GroupTable, lattice: &SubgroupLattice) -> Result<SocleData> {
    let minimal_normals = minimal_normal_subgroups(lattice);
    let mut socle = lattice.trivial();
    for &n in &minimal_normals {
        socle = lattice.join(g, socle, n);
    }
    let tee: Vec<SubgroupId> = lattice
        .normal_ids()
        .iter()
        .copied()
        .filter(|&t| lattice.includes(t, socle))
        .collect();
    let mut dims = HashMap::with_capacity(tee.len());
    let mut reversed = minimal_normals.clone();
    reversed.reverse();
    for &t in &tee {
        let forward = decomposition_length(g, lattice, &minimal_normals, t)?;
        let backward = decomposition_length(g, lattice, &reversed, t)?;
        if forward != backward {
            return Err(Error::DimensionInconsistency(format!(
                "subgroup {t}: {forward} atoms scanning forward, {backward} backward"
            )));
        }
        dims.insert(t, forward);
    }
    let socle_set = lattice.get(socle).members().clone();
    let relative_cores = (0..lattice.len())
        .map(|h| {
            let set: ElementSet = lattice.get(lattice.core(h)).members().intersection(&socle_set);
            lattice.id_of(&set).expect("core ∩ socle is a subgroup")
        })
        .collect();
    Ok(SocleData {
        dim_g: dims[&socle],
        minimal_normals,
        socle,
        tee,
        dims,
        relative_cores,
    })
}

impl SocleData {
    pub fn minimal_normals(&self) -> &[SubgroupId] {
        &self.minimal_normals
    }

    pub fn socle(&self) -> SubgroupId {
        self.socle
    }

    /// Normal subgroups contained in the socle, in lattice order.
    pub fn tee(&self) -> &[SubgroupId] {
        &self.tee
    }

    pub fn dim_g(&self) -> usize {
        self.dim_g
    }

    /// Dimension of a member of the socle lattice.
    pub fn dim_of_tee(&self, t: SubgroupId) -> Option<usize> {
        self.dims.get(&t).copied()
    }

    /// `core(H) ∩ soc(G)`, precomputed for every subgroup.
    pub fn rc(&self, h: SubgroupId) -> SubgroupId {
        self.relative_cores[h]
    }

    pub fn dim_of_subgroup(&self, h: SubgroupId) -> usize {
        self.dims[&self.relative_cores[h]]
    }

    pub fn codim(&self, h: SubgroupId) -> usize {
        self.dim_g - self.dim_of_subgroup(h)
    }

    /// Relative core of a collection: the intersection of the members'
    /// relative cores (the whole socle for an empty collection).
    pub fn collection_rc(&self, lattice: &SubgroupLattice, hs: &[SubgroupId]) -> SubgroupId {
        let mut set = lattice.get(self.socle).members().clone();
        for &h in hs {
            set.intersect_with(lattice.get(self.relative_cores[h]).members());
        }
        lattice.id_of(&set).expect("intersection of normal subgroups")
    }

    /// Minimal normal subgroups `S_1, …, S_k` whose direct product is the socle.
    pub fn socle_decomposition(&self, g: &GroupTable, lattice: &SubgroupLattice) -> Vec<SubgroupId> {
        let mut running = lattice.trivial();
        let mut factors = Vec::new();
        for &n in &self.minimal_normals {
            if !lattice.includes(n, running) {
                running = lattice.join(g, running, n);
                factors.push(n);
            }
        }
        factors
    }
}

/// Join of the minimal normal subgroups contained in `h`.
pub fn relative_core(g: &GroupTable, lattice: &SubgroupLattice, socle: &SocleData, h: SubgroupId) -> SubgroupId {
    socle
        .minimal_normals()
        .iter()
        .filter(|&&n| lattice.includes(n, h))
        .fold(lattice.trivial(), |acc, &n| lattice.join(g, acc, n))
}

pub fn dim_of_subgroup(socle: &SocleData, h: SubgroupId) -> usize {
    socle.dim_of_subgroup(h)
}

pub fn codim(socle: &SocleData, h: SubgroupId) -> usize {
    socle.codim(h)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SocleFriendliness {
    pub friendly: bool,
    /// First failing pair `(H, N)` in lattice order, `N` a minimal normal subgroup.
    pub witness: Option<(SubgroupId, SubgroupId)>,
}

/// Checks `RC(H·T) = RC(H)·T` for every subgroup `H` and every `T` in the
/// socle lattice.
///
/// Every `T` is a product of minimal normal subgroups and `H·N₁N₂ = (H·N₁)·N₂`,
/// so it suffices to check atoms `T = N`. For `N ⊄ H` the product `RC(H)·N`
/// has order `|RC(H)|·|N|` and always lies in `RC(H·N)`, so equality is an
/// order comparison.
pub fn is_socle_friendly(g: &GroupTable, lattice: &SubgroupLattice, socle: &SocleData) -> SocleFriendliness {
    for h in 0..lattice.len() {
        let rc_order = lattice.get(socle.rc(h)).order();
        for &n in socle.minimal_normals() {
            if lattice.includes(n, h) {
                continue;
            }
            let hn = lattice.join(g, h, n);
            if lattice.get(socle.rc(hn)).order() != rc_order * lattice.get(n).order() {
                return SocleFriendliness {
                    friendly: false,
                    witness: Some((h, n)),
                };
            }
        }
    }
    SocleFriendliness {
        friendly: true,
        witness: None,
    }
}

/// Rank of the elementary abelian group `{z ∈ Z(G) : z^p = 1}`; zero when `p ∤ |G|`.
pub fn central_p_rank(g: &GroupTable, p: u64) -> usize {
    if p < 2 || g.order() as u64 % p != 0 {
        return 0;
    }
    let z = center(g);
    let torsion = z.members().iter().filter(|&x| g.pow(x, p) == 0).count() as u64;
    let mut rank = 0;
    let mut m = torsion;
    while m > 1 {
        debug_assert_eq!(m % p, 0);
        m /= p;
        rank += 1;
    }
    rank
}

/// Central `e_p` for every prime dividing `|G|`.
pub fn central_ranks(g: &GroupTable) -> Vec<(u64, usize)> {
    crate::numbers::prime_factors(g.order() as u64)
        .into_iter()
        .map(|(p, _)| (p, central_p_rank(g, p)))
        .collect()
}

pub fn central_involution_count(g: &GroupTable) -> usize {
    center(g)
        .members()
        .iter()
        .filter(|&z| g.element_orders()[z as usize] == 2)
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::Caps;
    use crate::group::direct_product;
    use crate::group::tests::{cyclic, q8, s3};
    use crate::lattice::enumerate_subgroups;

    fn data(g: &GroupTable) -> (SubgroupLattice, SocleData) {
        let lat = enumerate_subgroups(g, &Caps::default()).unwrap();
        let soc = compute_socle_data(g, &lat).unwrap();
        (lat, soc)
    }

    fn prod(gs: &[GroupTable]) -> GroupTable {
        let caps = Caps::default();
        gs[1..]
            .iter()
            .fold(gs[0].clone(), |acc, g| direct_product(&acc, g, &caps).unwrap())
    }

    #[test]
    fn minimal_normals_examples() {
        let (lat, soc) = data(&cyclic(9));
        assert_eq!(soc.minimal_normals().len(), 1);
        assert_eq!(lat.get(soc.minimal_normals()[0]).order(), 3);
        let (_, soc) = data(&prod(&[cyclic(2), cyclic(2)]));
        assert_eq!(soc.minimal_normals().len(), 3);
        let (lat, soc) = data(&s3());
        assert_eq!(soc.minimal_normals().len(), 1);
        assert_eq!(lat.get(soc.minimal_normals()[0]).order(), 3);
    }

    #[test]
    fn dimensions() {
        assert_eq!(data(&prod(&[cyclic(3), cyclic(3), cyclic(3)])).1.dim_g(), 3);
        assert_eq!(data(&prod(&[cyclic(2), cyclic(2)])).1.dim_g(), 2);
        assert_eq!(data(&q8()).1.dim_g(), 1);
        assert_eq!(data(&prod(&[cyclic(2), cyclic(9)])).1.dim_g(), 2);
        let (lat, soc) = data(&cyclic(1));
        assert_eq!(soc.dim_g(), 0);
        assert_eq!(soc.socle(), lat.trivial());
    }

    #[test]
    fn relative_cores_examples() {
        let g = prod(&[cyclic(2), cyclic(2)]);
        let (lat, soc) = data(&g);
        assert_eq!(relative_core(&g, &lat, &soc, lat.whole()), soc.socle());
        for h in 0..lat.len() {
            // abelian: every subgroup is normal and inside the socle
            assert_eq!(soc.rc(h), h);
        }
        assert_eq!(soc.codim(lat.whole()), 0);
        assert_eq!(soc.codim(lat.trivial()), 2);
    }

    #[test]
    fn rc_two_ways_and_tee_by_joins() {
        let caps = Caps::default();
        let groups = vec![
            s3(),
            q8(),
            prod(&[cyclic(2), cyclic(2), cyclic(3)]),
            prod(&[cyclic(4), cyclic(2)]),
            direct_product(&s3(), &cyclic(3), &caps).unwrap(),
            direct_product(&s3(), &cyclic(2), &caps).unwrap(),
        ];
        for g in &groups {
            let (lat, soc) = data(g);
            for h in 0..lat.len() {
                assert_eq!(relative_core(g, &lat, &soc, h), soc.rc(h), "{} subgroup {h}", g.label());
            }
            // the socle lattice equals the set of joins of minimal normal subgroups
            let atoms = soc.minimal_normals();
            let mut joins = std::collections::BTreeSet::new();
            for mask in 0u32..(1 << atoms.len()) {
                let t = (0..atoms.len())
                    .filter(|i| mask & (1 << i) != 0)
                    .fold(lat.trivial(), |acc, i| lat.join(g, acc, atoms[i]));
                joins.insert(t);
            }
            let tee: std::collections::BTreeSet<_> = soc.tee().iter().copied().collect();
            assert_eq!(joins, tee);
            assert_eq!(soc.dim_of_tee(lat.trivial()), Some(0));
            // inclusion–exclusion on the socle lattice
            for &s in soc.tee() {
                for &t in soc.tee() {
                    let meet = lat.meet(s, t);
                    let join = lat.join(g, s, t);
                    assert_eq!(
                        soc.dim_of_tee(s).unwrap() + soc.dim_of_tee(t).unwrap(),
                        soc.dim_of_tee(meet).unwrap() + soc.dim_of_tee(join).unwrap()
                    );
                }
            }
        }
    }

    /// Direct scan over every pair `(H, T)`.
    fn friendly_by_all_pairs(g: &GroupTable, lat: &SubgroupLattice, soc: &SocleData) -> bool {
        (0..lat.len()).all(|h| {
            soc.tee().iter().all(|&t| {
                let ht = lat.join(g, h, t);
                soc.rc(ht) == lat.join(g, soc.rc(h), t)
            })
        })
    }

    #[test]
    fn socle_friendliness() {
        let caps = Caps::default();
        for g in [s3(), q8(), prod(&[cyclic(3), cyclic(3)]), prod(&[cyclic(4), cyclic(2)])] {
            let (lat, soc) = data(&g);
            let result = is_socle_friendly(&g, &lat, &soc);
            assert!(result.friendly, "{}", g.label());
            assert!(friendly_by_all_pairs(&g, &lat, &soc));
        }
        // C3 × S3 is the order-18 group with a core-free diagonal line.
        let g = direct_product(&cyclic(3), &s3(), &caps).unwrap();
        let (lat, soc) = data(&g);
        let result = is_socle_friendly(&g, &lat, &soc);
        assert!(!result.friendly);
        assert!(!friendly_by_all_pairs(&g, &lat, &soc));
        let (w, n) = result.witness.unwrap();
        assert_eq!(lat.get(w).order(), 3);
        assert_eq!(soc.rc(w), lat.trivial());
        assert_eq!(soc.rc(lat.join(&g, w, n)), soc.socle());
    }

    #[test]
    fn central_ranks_and_involutions() {
        assert_eq!(central_p_rank(&cyclic(9), 3), 1);
        assert_eq!(central_p_rank(&prod(&[cyclic(3), cyclic(3), cyclic(3)]), 3), 3);
        assert_eq!(central_p_rank(&cyclic(9), 2), 0);
        assert_eq!(central_involution_count(&cyclic(15)), 0);
        assert_eq!(central_involution_count(&prod(&[cyclic(2), cyclic(2)])), 3);
        assert_eq!(central_involution_count(&q8()), 1);
    }
}
