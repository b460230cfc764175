//! Subgroup lattices: enumeration, inclusion, conjugacy classes and cores.

use std::collections::HashMap;

use serde::Serialize;

use crate::bitset::ElementSet;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::{ElementId, GroupTable};

/// Index of a subgroup inside a [`SubgroupLattice`].
pub type SubgroupId = usize;

#[derive(Clone, Debug)]
pub struct Subgroup {
    members: ElementSet,
    order: usize,
    index: usize,
    is_normal: bool,
    gens: Vec<ElementId>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    /// Wraps a membership set that is known to be a subgroup of `g`.
    pub fn from_set(g: &GroupTable, members: ElementSet) -> Subgroup {
        let mut gens = Vec::new();
        let mut current = ElementSet::from_elements(g.order(), [0]);
        let target = members.len();
        for x in members.iter() {
            if current.len() == target {
                break;
            }
            if !current.contains(x) {
                current = g.adjoin(&current, &gens, x);
                gens.push(x);
            }
        }
        debug_assert_eq!(current, members, "membership set is not a subgroup");
        Self::with_gens(g, members, gens)
    }

    pub(crate) fn with_gens(g: &GroupTable, members: ElementSet, gens: Vec<ElementId>) -> Subgroup {
        let order = members.len();
        let is_normal = g.generators().iter().all(|&s| {
            gens.iter()
                .all(|&h| members.contains(g.conjugate(s, h)))
        });
        Subgroup {
            index: g.order() / order,
            order,
            is_normal,
            members,
            gens,
        }
    }

    pub fn generated_by(g: &GroupTable, gens: &[ElementId]) -> Subgroup {
        let (members, gens) = g.generate(gens);
        Self::with_gens(g, members, gens)
    }

    pub fn trivial(g: &GroupTable) -> Subgroup {
        Self::with_gens(g, ElementSet::from_elements(g.order(), [0]), Vec::new())
    }

    pub fn whole(g: &GroupTable) -> Subgroup {
        Self::with_gens(g, ElementSet::full(g.order()), g.generators().to_vec())
    }

    pub fn members(&self) -> &ElementSet {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `[G:H]`.
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn is_normal(&self) -> bool {
        self.is_normal
    }

    pub fn generators(&self) -> &[ElementId] {
        &self.gens
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn contains(&self, x: ElementId) -> bool {
        self.members.contains(x)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.members.is_subset(&other.members)
    }

    /// The subgroup as a group in its own right, elements renumbered in
    /// increasing order of their ids in `g`.
    pub fn as_group(&self, g: &GroupTable, label: impl Into<String>) -> GroupTable {
        let elements = self.members.to_vec();
        let mut local = vec![u32::MAX; g.order()];
        for (i, &x) in elements.iter().enumerate() {
            local[x as usize] = i as ElementId;
        }
        let mut mul = Vec::with_capacity(elements.len() * elements.len());
        for &x in &elements {
            for &y in &elements {
                mul.push(local[g.mul(x, y) as usize]);
            }
        }
        GroupTable::from_trusted(elements.len(), mul, label)
    }
}

/// `H^g`-images of `h` for all `g`, intersected. Computed directly from the
/// table, independent of any lattice.
pub fn core(g: &GroupTable, h: &Subgroup) -> Subgroup {
    if h.is_normal() {
        return h.clone();
    }
    let mut members = h.members().clone();
    for x in g.elements() {
        let conj = ElementSet::from_elements(g.order(), h.members().iter().map(|y| g.conjugate(x, y)));
        members.intersect_with(&conj);
    }
    Subgroup::from_set(g, members)
}

/// Intersection of the cores; the empty collection has core `G`.
pub fn collection_core(g: &GroupTable, hs: &[Subgroup]) -> Subgroup {
    let mut members = ElementSet::full(g.order());
    for h in hs {
        members.intersect_with(core(g, h).members());
    }
    Subgroup::from_set(g, members)
}

/// The subgroup generated by `a ∪ b`.
pub fn join(g: &GroupTable, a: &Subgroup, b: &Subgroup) -> Subgroup {
    let (members, gens) = g.extend(a.members(), a.generators(), b.generators());
    Subgroup::with_gens(g, members, gens)
}

pub fn meet(g: &GroupTable, a: &Subgroup, b: &Subgroup) -> Subgroup {
    Subgroup::from_set(g, a.members().intersection(b.members()))
}

#[derive(Clone, Debug)]
pub struct ConjugacyClass {
    /// Lexicographically smallest member.
    pub representative: SubgroupId,
    pub members: Vec<SubgroupId>,
}

/// Every subgroup of a group, sorted by (order, membership set).
///
/// Id 0 is the trivial subgroup and the last id is the whole group.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    subgroups: Vec<Subgroup>,
    lookup: HashMap<ElementSet, SubgroupId>,
    classes: Vec<ConjugacyClass>,
    class_of: Vec<usize>,
    cores: Vec<SubgroupId>,
    normal_ids: Vec<SubgroupId>,
}

/// Enumerates all subgroups.
///
/// Every subgroup is generated by cyclic subgroups of prime-power order, so
/// closing `{1}` under "join with one such cyclic subgroup" reaches each of
/// them. Conjugacy classes are orbits under conjugation by the generators of
/// `G`.
pub fn enumerate_subgroups(g: &GroupTable, caps: &Caps) -> Result<SubgroupLattice> {
    caps.check_order(g.order())?;
    let n = g.order();

    let mut cyclic_gens: Vec<(ElementSet, ElementId)> = Vec::new();
    let mut seen_cyclic: HashMap<ElementSet, ()> = HashMap::new();
    for x in g.elements() {
        let ord = g.element_orders()[x as usize];
        if x == 0 || !is_prime_power(ord as u64) {
            continue;
        }
        let set = ElementSet::from_elements(n, (0..ord).map(|k| g.pow(x, k as u64)));
        if seen_cyclic.insert(set.clone(), ()).is_none() {
            cyclic_gens.push((set, x));
        }
    }
    cyclic_gens.sort();

    let mut found: Vec<(ElementSet, Vec<ElementId>)> = vec![(ElementSet::from_elements(n, [0]), Vec::new())];
    let mut lookup: HashMap<ElementSet, SubgroupId> = HashMap::new();
    lookup.insert(found[0].0.clone(), 0);
    let mut i = 0;
    while i < found.len() {
        let (base, base_gens) = found[i].clone();
        for (cyc, x) in &cyclic_gens {
            if cyc.is_subset(&base) {
                continue;
            }
            let joined = g.adjoin(&base, &base_gens, *x);
            if !lookup.contains_key(&joined) {
                if found.len() >= caps.lattice {
                    return Err(Error::LatticeCapExceeded {
                        cap: caps.lattice,
                        found: found.len() + 1,
                        processed: i,
                    });
                }
                lookup.insert(joined.clone(), found.len());
                let mut gens = base_gens.clone();
                gens.push(*x);
                found.push((joined, gens));
            }
        }
        i += 1;
    }

    found.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    let lookup: HashMap<ElementSet, SubgroupId> =
        found.iter().enumerate().map(|(i, (s, _))| (s.clone(), i)).collect();
    let subgroups: Vec<Subgroup> = found
        .into_iter()
        .map(|(set, gens)| Subgroup::with_gens(g, set, gens))
        .collect();

    let mut class_of = vec![usize::MAX; subgroups.len()];
    let mut classes = Vec::new();
    for start in 0..subgroups.len() {
        if class_of[start] != usize::MAX {
            continue;
        }
        let class_id = classes.len();
        let mut members = vec![start];
        class_of[start] = class_id;
        let mut j = 0;
        while j < members.len() {
            let h = &subgroups[members[j]];
            for &s in g.generators() {
                let conj = ElementSet::from_elements(n, h.members().iter().map(|y| g.conjugate(s, y)));
                let id = lookup[&conj];
                if class_of[id] == usize::MAX {
                    class_of[id] = class_id;
                    members.push(id);
                }
            }
            j += 1;
        }
        members.sort_unstable();
        classes.push(ConjugacyClass {
            representative: members[0],
            members,
        });
    }

    let cores = classes_to_cores(&subgroups, &classes, &class_of, &lookup);
    let normal_ids = (0..subgroups.len())
        .filter(|&i| classes[class_of[i]].members.len() == 1)
        .collect();

    Ok(SubgroupLattice {
        subgroups,
        lookup,
        classes,
        class_of,
        cores,
        normal_ids,
    })
}

fn classes_to_cores(
    subgroups: &[Subgroup],
    classes: &[ConjugacyClass],
    class_of: &[usize],
    lookup: &HashMap<ElementSet, SubgroupId>,
) -> Vec<SubgroupId> {
    let class_cores: Vec<SubgroupId> = classes
        .iter()
        .map(|class| {
            let mut set = subgroups[class.members[0]].members().clone();
            for &m in &class.members[1..] {
                set.intersect_with(subgroups[m].members());
            }
            lookup[&set]
        })
        .collect();
    class_of.iter().map(|&c| class_cores[c]).collect()
}

pub(crate) fn is_prime_power(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let p = smallest_prime_factor(n);
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    m == 1
}

pub(crate) fn smallest_prime_factor(n: u64) -> u64 {
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return d;
        }
        d += 1;
    }
    n
}

impl SubgroupLattice {
    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn get(&self, id: SubgroupId) -> &Subgroup {
        &self.subgroups[id]
    }

    pub fn id_of(&self, set: &ElementSet) -> Option<SubgroupId> {
        self.lookup.get(set).copied()
    }

    pub fn trivial(&self) -> SubgroupId {
        0
    }

    pub fn whole(&self) -> SubgroupId {
        self.subgroups.len() - 1
    }

    /// `a ⊆ b`.
    pub fn includes(&self, a: SubgroupId, b: SubgroupId) -> bool {
        self.subgroups[a].is_subgroup_of(&self.subgroups[b])
    }

    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn class_of(&self, id: SubgroupId) -> usize {
        self.class_of[id]
    }

    pub fn normal_ids(&self) -> &[SubgroupId] {
        &self.normal_ids
    }

    /// Core of a subgroup: the intersection of its conjugacy class.
    pub fn core(&self, id: SubgroupId) -> SubgroupId {
        self.cores[id]
    }

    pub fn collection_core(&self, ids: &[SubgroupId]) -> SubgroupId {
        match ids.split_first() {
            None => self.whole(),
            Some((&first, rest)) => {
                let mut set = self.subgroups[self.cores[first]].members().clone();
                for &id in rest {
                    set.intersect_with(self.subgroups[self.cores[id]].members());
                }
                self.lookup[&set]
            }
        }
    }

    pub fn meet(&self, a: SubgroupId, b: SubgroupId) -> SubgroupId {
        self.lookup[&self.subgroups[a].members().intersection(self.subgroups[b].members())]
    }

    pub fn join(&self, g: &GroupTable, a: SubgroupId, b: SubgroupId) -> SubgroupId {
        let (sa, sb) = (&self.subgroups[a], &self.subgroups[b]);
        if sb.is_subgroup_of(sa) {
            return a;
        }
        if sa.is_subgroup_of(sb) {
            return b;
        }
        let (set, _) = g.extend(sa.members(), sa.generators(), sb.generators());
        self.lookup[&set]
    }

    /// The lattice in its JSON dump form.
    pub fn dump(&self, g: &GroupTable) -> LatticeDump {
        LatticeDump {
            schema_version: 1,
            group: g.label().to_string(),
            order: g.order(),
            subgroups: self
                .subgroups
                .iter()
                .enumerate()
                .map(|(id, h)| SubgroupDump {
                    id,
                    elements: h.members().to_vec(),
                    order: h.order(),
                    normal: h.is_normal(),
                    class: self.class_of[id],
                })
                .collect(),
            classes: self
                .classes
                .iter()
                .map(|c| ClassDump {
                    representative: c.representative,
                    members: c.members.clone(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct LatticeDump {
    pub schema_version: u32,
    pub group: String,
    pub order: usize,
    pub subgroups: Vec<SubgroupDump>,
    pub classes: Vec<ClassDump>,
}

#[derive(Debug, Serialize)]
pub struct SubgroupDump {
    pub id: usize,
    pub elements: Vec<u32>,
    pub order: usize,
    pub normal: bool,
    pub class: usize,
}

#[derive(Debug, Serialize)]
pub struct ClassDump {
    pub representative: usize,
    pub members: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::tests::{cyclic, q8, s3};
    use crate::group::direct_product;

    /// Every subset containing 0 that is closed under the product, by brute
    /// force over all 2^(n-1) candidate sets.
    fn brute_force_subgroups(g: &GroupTable) -> Vec<ElementSet> {
        let n = g.order();
        let mut out = Vec::new();
        for mask in 0u32..(1 << (n - 1)) {
            let set = ElementSet::from_elements(n, std::iter::once(0).chain((1..n as u32).filter(|&x| mask & (1 << (x - 1)) != 0)));
            if n % set.len() != 0 {
                continue;
            }
            let closed = set.iter().all(|a| set.iter().all(|b| set.contains(g.mul(a, b))));
            if closed {
                out.push(set);
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    fn d4() -> GroupTable {
        let gens = crate::group::PermGenerators::from_cycles(4, &[&[&[0, 1, 2, 3]], &[&[0, 2]]]).unwrap();
        crate::group::group_from_permutations(&gens, "D4", &Caps::default()).unwrap()
    }

    fn lattice(g: &GroupTable) -> SubgroupLattice {
        enumerate_subgroups(g, &Caps::default()).unwrap()
    }

    #[test]
    fn matches_brute_force() {
        let caps = Caps::default();
        let groups = vec![
            cyclic(1),
            cyclic(5),
            cyclic(9),
            s3(),
            q8(),
            d4(),
            direct_product(&cyclic(2), &cyclic(2), &caps).unwrap(),
            direct_product(&cyclic(3), &cyclic(3), &caps).unwrap(),
            direct_product(&cyclic(2), &cyclic(6), &caps).unwrap(),
        ];
        for g in &groups {
            let lat = lattice(g);
            let brute = brute_force_subgroups(g);
            let ours: Vec<ElementSet> = lat.subgroups().iter().map(|h| h.members().clone()).collect();
            assert_eq!(ours, brute, "{}", g.label());
        }
    }

    #[test]
    fn known_counts() {
        let caps = Caps::default();
        assert_eq!(lattice(&cyclic(7)).len(), 2);
        assert_eq!(lattice(&cyclic(9)).len(), 3);
        assert_eq!(lattice(&direct_product(&cyclic(2), &cyclic(2), &caps).unwrap()).len(), 5);
        for p in [2usize, 3, 5] {
            let g = direct_product(&cyclic(p), &cyclic(p), &caps).unwrap();
            assert_eq!(lattice(&g).len(), p + 3);
        }
        assert_eq!(lattice(&q8()).len(), 6);
        assert_eq!(lattice(&d4()).len(), 10);
    }

    #[test]
    fn s3_lattice() {
        let g = s3();
        let lat = lattice(&g);
        assert_eq!(lat.len(), 6);
        assert_eq!(lat.classes().len(), 4);
        let c2_class = lat
            .classes()
            .iter()
            .find(|c| lat.get(c.representative).order() == 2)
            .unwrap();
        assert_eq!(c2_class.members.len(), 3);
        let normal_orders: Vec<usize> = lat.normal_ids().iter().map(|&i| lat.get(i).order()).collect();
        assert_eq!(normal_orders, vec![1, 3, 6]);
        // conjugacy class representative is the lexicographically smallest member
        for class in lat.classes() {
            let min = class.members.iter().map(|&m| lat.get(m).members()).min().unwrap();
            assert_eq!(lat.get(class.representative).members(), min);
        }
    }

    #[test]
    fn subgroups_as_groups() {
        let g = q8();
        let lat = lattice(&g);
        for h in lat.subgroups() {
            let sub = h.as_group(&g, "H");
            sub.validate_full().unwrap();
            assert_eq!(sub.order(), h.order());
            let orders: Vec<u32> = h.members().iter().map(|x| g.element_orders()[x as usize]).collect();
            assert_eq!(sub.element_orders(), orders.as_slice());
        }
    }

    #[test]
    fn lattice_invariants() {
        let caps = Caps::default();
        for g in [s3(), q8(), d4(), direct_product(&cyclic(2), &cyclic(4), &caps).unwrap()] {
            let lat = lattice(&g);
            assert_eq!(lat.get(0).order(), 1);
            assert_eq!(lat.get(lat.whole()).order(), g.order());
            let total: usize = lat.classes().iter().map(|c| c.members.len()).sum();
            assert_eq!(total, lat.len());
            for class in lat.classes() {
                let o = lat.get(class.representative).order();
                assert!(class.members.iter().all(|&m| lat.get(m).order() == o));
            }
            for (id, h) in lat.subgroups().iter().enumerate() {
                assert_eq!(h.order() * h.index(), g.order());
                assert_eq!(h.is_normal(), lat.normal_ids().contains(&id));
                let c = lat.core(id);
                assert!(lat.get(c).is_normal());
                assert!(lat.includes(c, id));
                for &n in lat.normal_ids() {
                    if lat.includes(n, id) {
                        assert!(lat.includes(n, c));
                    }
                }
                // table-level core agrees with the lattice's class intersection
                assert_eq!(core(&g, h).members(), lat.get(c).members());
            }
            // partial order
            for a in 0..lat.len() {
                for b in 0..lat.len() {
                    if lat.includes(a, b) && lat.includes(b, a) {
                        assert_eq!(a, b);
                    }
                    let m = lat.meet(a, b);
                    let j = lat.join(&g, a, b);
                    assert!(lat.includes(m, a) && lat.includes(m, b));
                    assert!(lat.includes(a, j) && lat.includes(b, j));
                }
            }
        }
    }

    #[test]
    fn modular_law_on_normal_subgroups() {
        let caps = Caps::default();
        for g in [d4(), q8(), direct_product(&cyclic(2), &cyclic(4), &caps).unwrap(), direct_product(&s3(), &cyclic(3), &caps).unwrap()] {
            let lat = lattice(&g);
            let normals = lat.normal_ids();
            for &a in normals {
                for &b in normals {
                    for &c in normals {
                        if lat.includes(a, c) {
                            // a ⊆ c ⇒ a ∨ (b ∧ c) = (a ∨ b) ∧ c
                            let left = lat.join(&g, a, lat.meet(b, c));
                            let right = lat.meet(lat.join(&g, a, b), c);
                            assert_eq!(left, right);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cores_and_joins() {
        let caps = Caps::default();
        let g = s3();
        let lat = lattice(&g);
        let c2s: Vec<Subgroup> = lat.subgroups().iter().filter(|h| h.order() == 2).cloned().collect();
        for h in &c2s {
            assert!(core(&g, h).is_trivial());
        }
        assert!(collection_core(&g, &c2s).is_trivial());
        assert_eq!(collection_core(&g, &[]).order(), 6);
        assert_eq!(collection_core(&g, &[Subgroup::whole(&g)]).order(), 6);

        let v4 = direct_product(&cyclic(2), &cyclic(2), &caps).unwrap();
        let lat = lattice(&v4);
        let lines: Vec<Subgroup> = lat.subgroups().iter().filter(|h| h.order() == 2).cloned().collect();
        assert!(collection_core(&v4, &lines[..2]).is_trivial());
        assert_eq!(join(&v4, &lines[0], &lines[1]).order(), 4);
        assert_eq!(join(&v4, &lines[0], &Subgroup::trivial(&v4)), lines[0]);
        assert_eq!(meet(&v4, &lines[0], &Subgroup::whole(&v4)), lines[0]);
        // a normal subgroup is its own core
        assert_eq!(core(&v4, &lines[0]), lines[0]);
    }

    #[test]
    fn lattice_cap() {
        let caps = Caps::default();
        let g = direct_product(&cyclic(2), &cyclic(2), &caps).unwrap();
        let err = enumerate_subgroups(&g, &Caps { lattice: 3, ..caps }).unwrap_err();
        assert!(matches!(err, Error::LatticeCapExceeded { cap: 3, .. }));
    }
}
