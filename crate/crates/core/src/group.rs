//! Finite groups as complete multiplication tables.
//!
//! Element ids are dense integers `0..n` and id 0 is always the identity.
//! Every constructor assigns ids deterministically, so identical inputs
//! give bit-identical tables.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::bitset::ElementSet;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::lattice::Subgroup;

pub type ElementId = u32;

#[derive(Clone, Debug)]
pub struct GroupTable {
    order: usize,
    mul: Vec<ElementId>,
    inv: Vec<ElementId>,
    element_orders: Vec<u32>,
    generators: Vec<ElementId>,
    label: String,
}

/// Generators of a permutation group on `0..degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermGenerators {
    pub degree: usize,
    pub generators: Vec<Vec<u32>>,
}

impl PermGenerators {
    pub fn new(degree: usize, generators: Vec<Vec<u32>>) -> Self {
        PermGenerators { degree, generators }
    }

    /// Builds generators from cycle notation, e.g. `&[&[&[0, 1, 2]], &[&[0, 1]]]`.
    pub fn from_cycles(degree: usize, gens: &[&[&[u32]]]) -> Result<Self> {
        let mut out = Vec::with_capacity(gens.len());
        for cycles in gens {
            let mut perm: Vec<u32> = (0..degree as u32).collect();
            for cycle in cycles.iter() {
                for (i, &x) in cycle.iter().enumerate() {
                    let y = cycle[(i + 1) % cycle.len()];
                    if x as usize >= degree || y as usize >= degree {
                        return Err(Error::InvalidPermutation(format!(
                            "point out of range in cycle {cycle:?}"
                        )));
                    }
                    perm[x as usize] = y;
                }
            }
            out.push(perm);
        }
        Ok(PermGenerators::new(degree, out))
    }
}

/// A homomorphism from an acting group `H` into `Aut(V)`: `images[h]` is the
/// permutation of the element ids of `V` by which `h` acts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionSpec {
    pub images: Vec<Vec<ElementId>>,
}

impl ActionSpec {
    pub fn trivial(v: &GroupTable, h: &GroupTable) -> Self {
        ActionSpec {
            images: vec![(0..v.order() as ElementId).collect(); h.order()],
        }
    }
}

impl GroupTable {
    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        self.mul[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, x: ElementId) -> ElementId {
        self.inv[x as usize]
    }

    #[inline]
    pub fn identity(&self) -> ElementId {
        0
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn element_orders(&self) -> &[u32] {
        &self.element_orders
    }

    /// A small generating set, chosen greedily in id order.
    pub fn generators(&self) -> &[ElementId] {
        &self.generators
    }

    /// `g x g⁻¹`.
    #[inline]
    pub fn conjugate(&self, g: ElementId, x: ElementId) -> ElementId {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, x: ElementId, k: u64) -> ElementId {
        let mut acc = 0;
        for _ in 0..k {
            acc = self.mul(acc, x);
        }
        acc
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> {
        0..self.order as ElementId
    }

    pub fn rows(&self) -> impl Iterator<Item = &[ElementId]> {
        self.mul.chunks(self.order)
    }

    /// Builds a table the caller guarantees to be a group (identity at 0).
    pub(crate) fn from_trusted(order: usize, mul: Vec<ElementId>, label: impl Into<String>) -> Self {
        debug_assert_eq!(mul.len(), order * order);
        let mut inv = vec![0; order];
        for x in 0..order {
            let row = &mul[x * order..(x + 1) * order];
            inv[x] = row.iter().position(|&y| y == 0).expect("row without identity") as ElementId;
        }
        let mut element_orders = vec![1u32; order];
        for x in 1..order {
            let mut k = 1;
            let mut acc = x as ElementId;
            while acc != 0 {
                acc = mul[acc as usize * order + x];
                k += 1;
            }
            element_orders[x] = k;
        }
        let mut group = GroupTable {
            order,
            mul,
            inv,
            element_orders,
            generators: Vec::new(),
            label: label.into(),
        };
        group.generators = group.greedy_generators();
        group
    }

    fn greedy_generators(&self) -> Vec<ElementId> {
        let mut gens = Vec::new();
        let mut current = ElementSet::from_elements(self.order, [0]);
        for x in self.elements() {
            if !current.contains(x) {
                current = self.adjoin(&current, &gens, x);
                gens.push(x);
            }
            if current.len() == self.order {
                break;
            }
        }
        gens
    }

    /// The subgroup generated by `base` (a subgroup generated by `base_gens`)
    /// and `x`.
    ///
    /// The result is grown as a union of left cosets of `base`; it is a
    /// subgroup once the coset representatives are closed under left
    /// multiplication by every generator.
    pub fn adjoin(&self, base: &ElementSet, base_gens: &[ElementId], x: ElementId) -> ElementSet {
        if base.contains(x) {
            return base.clone();
        }
        let elements = base.to_vec();
        let mut result = base.clone();
        let mut reps: Vec<ElementId> = vec![0];
        let mut i = 0;
        while i < reps.len() {
            let r = reps[i];
            for &s in base_gens.iter().chain(std::iter::once(&x)) {
                let y = self.mul(s, r);
                if !result.contains(y) {
                    for &h in &elements {
                        result.insert(self.mul(y, h));
                    }
                    reps.push(y);
                }
            }
            i += 1;
        }
        result
    }

    /// The subgroup generated by `base` and all of `extra`; returns the
    /// membership set and a generating set for it.
    pub fn extend(
        &self,
        base: &ElementSet,
        base_gens: &[ElementId],
        extra: &[ElementId],
    ) -> (ElementSet, Vec<ElementId>) {
        let mut set = base.clone();
        let mut gens = base_gens.to_vec();
        for &x in extra {
            if !set.contains(x) {
                set = self.adjoin(&set, &gens, x);
                gens.push(x);
            }
        }
        (set, gens)
    }

    /// The subgroup generated by `gens`.
    pub fn generate(&self, gens: &[ElementId]) -> (ElementSet, Vec<ElementId>) {
        self.extend(&ElementSet::from_elements(self.order, [0]), &[], gens)
    }

    /// Exhaustive O(n³) check of the group axioms.
    pub fn validate_full(&self) -> Result<()> {
        let n = self.order as ElementId;
        for x in 0..n {
            if self.mul(0, x) != x || self.mul(x, 0) != x {
                return Err(Error::NotAGroup(format!("identity law fails at {x}")));
            }
            if self.mul(x, self.inv(x)) != 0 || self.mul(self.inv(x), x) != 0 {
                return Err(Error::NotAGroup(format!("inverse law fails at {x}")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Renders the table in the Cayley-table text format.
    pub fn to_cayley_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {}", self.label);
        let _ = writeln!(out, "{}", self.order);
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }
}

/// Validates an n×n table and builds the group it describes.
///
/// Associativity is established with Light's test: the elements `a` for
/// which `(xa)y = x(ay)` holds for all `x, y` are closed under products, so
/// checking a set that generates the table under right multiplication
/// decides associativity exactly.
pub fn group_from_cayley_table(
    table: &[Vec<ElementId>],
    label: &str,
    caps: &Caps,
) -> Result<GroupTable> {
    let n = table.len();
    if n == 0 {
        return Err(Error::NotAGroup("empty table".into()));
    }
    caps.check_order(n)?;
    let mut flat = Vec::with_capacity(n * n);
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotAGroup(format!("row {i} has {} entries, expected {n}", row.len())));
        }
        for &x in row {
            if x as usize >= n {
                return Err(Error::NotAGroup(format!("entry {x} out of range in row {i}")));
            }
        }
        flat.extend_from_slice(row);
    }
    let at = |a: usize, b: usize| flat[a * n + b] as usize;
    for x in 0..n {
        if at(0, x) != x || at(x, 0) != x {
            return Err(Error::NotAGroup(format!("id 0 is not the identity (fails at {x})")));
        }
    }
    // Latin square: every row and column is a permutation.
    let mut seen = vec![usize::MAX; n];
    for a in 0..n {
        for b in 0..n {
            let y = at(a, b);
            if seen[y] == a {
                return Err(Error::NotAGroup(format!("row {a} repeats {y}")));
            }
            seen[y] = a;
        }
    }
    seen.fill(usize::MAX);
    for b in 0..n {
        for a in 0..n {
            let y = at(a, b);
            if seen[y] == b {
                return Err(Error::NotAGroup(format!("column {b} repeats {y}")));
            }
            seen[y] = b;
        }
    }
    // Right-multiplication generators.
    let mut reached = ElementSet::from_elements(n, [0]);
    let mut reached_list = vec![0usize];
    let mut gens: Vec<usize> = Vec::new();
    for x in 0..n {
        if reached.contains(x as u32) {
            continue;
        }
        gens.push(x);
        let mut queue: VecDeque<(usize, bool)> = reached_list.iter().map(|&c| (c, true)).collect();
        while let Some((c, only_new)) = queue.pop_front() {
            let multipliers: &[usize] = if only_new { &gens[gens.len() - 1..] } else { &gens };
            for &s in multipliers {
                let y = at(c, s);
                if reached.insert(y as u32) {
                    reached_list.push(y);
                    queue.push_back((y, false));
                }
            }
        }
    }
    for &a in &gens {
        for x in 0..n {
            let xa = at(x, a);
            for y in 0..n {
                if at(xa, y) != at(x, at(a, y)) {
                    return Err(Error::NotAGroup(format!(
                        "associativity fails at ({x}, {a}, {y})"
                    )));
                }
            }
        }
    }
    Ok(GroupTable::from_trusted(n, flat, label))
}

/// Parses the Cayley-table text format: a line with `n`, then `n` rows of
/// `n` whitespace-separated ids. Lines starting with `#` are comments.
pub fn parse_cayley_text(text: &str) -> Result<Vec<Vec<ElementId>>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (line_no, header) = lines
        .next()
        .ok_or_else(|| Error::parse(0, "missing order line"))?;
    let n: usize = header
        .parse()
        .map_err(|_| Error::parse(line_no, format!("bad order {header:?}")))?;
    let mut table = Vec::with_capacity(n);
    for (line_no, line) in lines {
        if table.len() == n {
            return Err(Error::parse(line_no, "more rows than the declared order"));
        }
        let row: std::result::Result<Vec<ElementId>, _> =
            line.split_whitespace().map(str::parse).collect();
        let row = row.map_err(|_| Error::parse(line_no, "non-integer entry"))?;
        if row.len() != n {
            return Err(Error::parse(line_no, format!("expected {n} entries, found {}", row.len())));
        }
        table.push(row);
    }
    if table.len() != n {
        return Err(Error::parse(0, format!("expected {n} rows, found {}", table.len())));
    }
    Ok(table)
}

pub fn group_from_cayley_text(text: &str, label: &str, caps: &Caps) -> Result<GroupTable> {
    group_from_cayley_table(&parse_cayley_text(text)?, label, caps)
}

fn check_permutation(perm: &[u32], degree: usize) -> Result<()> {
    if perm.len() != degree {
        return Err(Error::InvalidPermutation(format!(
            "length {} does not match degree {degree}",
            perm.len()
        )));
    }
    let mut seen = vec![false; degree];
    for &x in perm {
        if x as usize >= degree || std::mem::replace(&mut seen[x as usize], true) {
            return Err(Error::InvalidPermutation(format!("{perm:?} is not a bijection")));
        }
    }
    Ok(())
}

/// The permutation group generated by `gens`. Products compose left to
/// right (`(ab)(i) = b(a(i))`); ids follow breadth-first generation order.
pub fn group_from_permutations(gens: &PermGenerators, label: &str, caps: &Caps) -> Result<GroupTable> {
    let m = gens.degree;
    for g in &gens.generators {
        check_permutation(g, m)?;
    }
    let identity: Vec<u32> = (0..m as u32).collect();
    let mut ids: HashMap<Vec<u32>, ElementId> = HashMap::new();
    let mut elements = vec![identity.clone()];
    ids.insert(identity, 0);
    // parent[y] = (x, s) with y = x·gen_s
    let mut parent: Vec<(ElementId, usize)> = vec![(0, usize::MAX)];
    let k = gens.generators.len();
    let mut right_gen: Vec<ElementId> = Vec::new();
    let mut i = 0;
    while i < elements.len() {
        for (s, g) in gens.generators.iter().enumerate() {
            let prod: Vec<u32> = elements[i].iter().map(|&p| g[p as usize]).collect();
            let next_id = elements.len() as ElementId;
            let id = *ids.entry(prod.clone()).or_insert(next_id);
            if id == next_id {
                caps.check_order(elements.len() + 1)?;
                elements.push(prod);
                parent.push((i as ElementId, s));
            }
            right_gen.push(id);
        }
        i += 1;
    }
    let n = elements.len();
    let mut mul = vec![0 as ElementId; n * n];
    for x in 0..n {
        mul[x * n] = x as ElementId;
        for y in 1..n {
            let (py, s) = parent[y];
            let xy_parent = mul[x * n + py as usize];
            mul[x * n + y] = right_gen[xy_parent as usize * k + s];
        }
    }
    Ok(GroupTable::from_trusted(n, mul, label))
}

/// `g1 × g2` with `(a, b)` stored at id `a·|g2| + b`.
pub fn direct_product(g1: &GroupTable, g2: &GroupTable, caps: &Caps) -> Result<GroupTable> {
    let (n1, n2) = (g1.order(), g2.order());
    caps.check_order(n1 * n2)?;
    let n = n1 * n2;
    let mut mul = Vec::with_capacity(n * n);
    for a in 0..n {
        let (a1, a2) = ((a / n2) as ElementId, (a % n2) as ElementId);
        for b in 0..n {
            let (b1, b2) = ((b / n2) as ElementId, (b % n2) as ElementId);
            mul.push(g1.mul(a1, b1) * n2 as ElementId + g2.mul(a2, b2));
        }
    }
    Ok(GroupTable::from_trusted(
        n,
        mul,
        format!("{} x {}", g1.label(), g2.label()),
    ))
}

/// `V ⋊ H` with `V` normal: `(v₁,h₁)(v₂,h₂) = (v₁·(h₁▸v₂), h₁h₂)`, stored at
/// id `v·|H| + h` so the trivial action reproduces [`direct_product`].
pub fn semidirect_product(
    v: &GroupTable,
    h: &GroupTable,
    action: &ActionSpec,
    caps: &Caps,
) -> Result<GroupTable> {
    let (nv, nh) = (v.order(), h.order());
    caps.check_order(nv * nh)?;
    if !v.is_abelian() {
        return Err(Error::NotAbelianNormalFactor);
    }
    if action.images.len() != nh {
        return Err(Error::ActionNotHomomorphism(format!(
            "{} images for an acting group of order {nh}",
            action.images.len()
        )));
    }
    for (x, image) in action.images.iter().enumerate() {
        check_permutation(image, nv)
            .map_err(|e| Error::ActionNotAutomorphism(format!("image of {x}: {e}")))?;
        for a in v.elements() {
            for b in v.elements() {
                if image[v.mul(a, b) as usize] != v.mul(image[a as usize], image[b as usize]) {
                    return Err(Error::ActionNotAutomorphism(format!(
                        "image of {x} does not respect the product of {a} and {b}"
                    )));
                }
            }
        }
    }
    for x in h.elements() {
        for y in h.elements() {
            let xy = &action.images[h.mul(x, y) as usize];
            let (ix, iy) = (&action.images[x as usize], &action.images[y as usize]);
            if v.elements().any(|w| xy[w as usize] != ix[iy[w as usize] as usize]) {
                return Err(Error::ActionNotHomomorphism(format!(
                    "action of {x}·{y} differs from the composite"
                )));
            }
        }
    }
    let n = nv * nh;
    let mut mul = Vec::with_capacity(n * n);
    for a in 0..n {
        let (v1, h1) = ((a / nh) as ElementId, (a % nh) as ElementId);
        let act = &action.images[h1 as usize];
        for b in 0..n {
            let (v2, h2) = ((b / nh) as ElementId, b % nh);
            let vv = v.mul(v1, act[v2 as usize]);
            mul.push(vv * nh as ElementId + h.mul(h1, h2 as ElementId));
        }
    }
    Ok(GroupTable::from_trusted(
        n,
        mul,
        format!("({}) : ({})", v.label(), h.label()),
    ))
}

/// Z(G); testing commutation with the generators is enough.
pub fn center(g: &GroupTable) -> Subgroup {
    let set = ElementSet::from_elements(
        g.order(),
        g.elements().filter(|&z| {
            g.generators()
                .iter()
                .all(|&s| g.mul(z, s) == g.mul(s, z))
        }),
    );
    Subgroup::from_set(g, set)
}

/// Upper central series test: `Z_{i+1} = {x : [x, s] ∈ Z_i for every generator s}`.
pub fn is_nilpotent(g: &GroupTable) -> bool {
    let mut current = ElementSet::from_elements(g.order(), [0]);
    loop {
        let next = ElementSet::from_elements(
            g.order(),
            g.elements().filter(|&x| {
                g.generators().iter().all(|&s| {
                    let commutator = g.mul(g.mul(x, s), g.mul(g.inv(x), g.inv(s)));
                    current.contains(commutator)
                })
            }),
        );
        if next.len() == g.order() {
            return true;
        }
        if next == current {
            return false;
        }
        current = next;
    }
}

pub fn element_order(g: &GroupTable, x: ElementId) -> u32 {
    g.element_orders()[x as usize]
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub fn cyclic(n: usize) -> GroupTable {
        let mul = (0..n * n).map(|i| ((i / n + i % n) % n) as ElementId).collect();
        GroupTable::from_trusted(n, mul, format!("C{n}"))
    }

    pub fn s3() -> GroupTable {
        let gens = PermGenerators::from_cycles(3, &[&[&[0, 1, 2]], &[&[0, 1]]]).unwrap();
        group_from_permutations(&gens, "S3", &Caps::default()).unwrap()
    }

    pub fn q8() -> GroupTable {
        // i = (0 1 2 3)(4 5 6 7), j = (0 4 2 6)(1 7 3 5) in the regular representation.
        let gens =
            PermGenerators::from_cycles(8, &[&[&[0, 1, 2, 3], &[4, 5, 6, 7]], &[&[0, 4, 2, 6], &[1, 7, 3, 5]]])
                .unwrap();
        group_from_permutations(&gens, "Q8", &Caps::default()).unwrap()
    }

    #[test]
    fn trivial_and_c2_tables() {
        let caps = Caps::default();
        let g = group_from_cayley_table(&[vec![0]], "1", &caps).unwrap();
        assert_eq!(g.order(), 1);
        let g = group_from_cayley_table(&[vec![0, 1], vec![1, 0]], "C2", &caps).unwrap();
        assert_eq!(g.element_orders(), &[1, 2]);
    }

    #[test]
    fn s3_from_its_own_table() {
        let s3 = s3();
        let table: Vec<Vec<u32>> = s3.rows().map(|r| r.to_vec()).collect();
        let g = group_from_cayley_table(&table, "S3", &Caps::default()).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.element_orders().iter().filter(|&&o| o <= 2).count(), 4);
    }

    #[test]
    fn rejects_non_groups() {
        let caps = Caps::default();
        // identity fails
        assert!(group_from_cayley_table(&[vec![1, 0], vec![0, 1]], "x", &caps).is_err());
        // Latin square with identity but not associative (order-5 loop).
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            group_from_cayley_table(&loop5, "loop", &caps),
            Err(Error::NotAGroup(_))
        ));
        assert!(group_from_cayley_table(&[vec![0, 1], vec![1, 2]], "x", &caps).is_err());
        assert!(matches!(
            group_from_cayley_table(&[vec![0, 1], vec![1, 0]], "x", &Caps { order: 1, ..Caps::default() }),
            Err(Error::OrderCapExceeded { .. })
        ));
    }

    #[test]
    fn permutation_closures() {
        let caps = Caps::default();
        let c2 = group_from_permutations(&PermGenerators::from_cycles(2, &[&[&[0, 1]]]).unwrap(), "C2", &caps)
            .unwrap();
        assert_eq!(c2.order(), 2);
        assert_eq!(s3().order(), 6);
        let c7 = group_from_permutations(
            &PermGenerators::from_cycles(7, &[&[&[0, 1, 2, 3, 4, 5, 6]]]).unwrap(),
            "C7",
            &caps,
        )
        .unwrap();
        assert!(c7.element_orders()[1..].iter().all(|&o| o == 7));
        c7.validate_full().unwrap();
        s3().validate_full().unwrap();
        q8().validate_full().unwrap();
        assert!(matches!(
            group_from_permutations(&PermGenerators::new(2, vec![vec![0, 0]]), "bad", &caps),
            Err(Error::InvalidPermutation(_))
        ));
        assert!(matches!(
            group_from_permutations(&PermGenerators::from_cycles(7, &[&[&[0, 1, 2, 3, 4, 5, 6]]]).unwrap(), "C7", &Caps { order: 5, ..caps }),
            Err(Error::OrderCapExceeded { .. })
        ));
    }

    #[test]
    fn products() {
        let caps = Caps::default();
        let v4 = direct_product(&cyclic(2), &cyclic(2), &caps).unwrap();
        assert_eq!(v4.element_orders().iter().filter(|&&o| o == 2).count(), 3);
        let c6 = direct_product(&cyclic(2), &cyclic(3), &caps).unwrap();
        assert!(c6.is_abelian());
        assert_eq!(element_order(&c6, 4), 6); // (1, 1) sits at 1·3 + 1
        let c33 = direct_product(&cyclic(3), &cyclic(3), &caps).unwrap();
        assert!(c33.element_orders()[1..].iter().all(|&o| o == 3));
        c33.validate_full().unwrap();
    }

    #[test]
    fn semidirect_products() {
        let caps = Caps::default();
        let (c3, c2) = (cyclic(3), cyclic(2));
        let trivial = semidirect_product(&c3, &c2, &ActionSpec::trivial(&c3, &c2), &caps).unwrap();
        let direct = direct_product(&c3, &c2, &caps).unwrap();
        assert!(trivial.rows().eq(direct.rows()));
        let inversion = ActionSpec {
            images: vec![vec![0, 1, 2], vec![0, 2, 1]],
        };
        let s3 = semidirect_product(&c3, &c2, &inversion, &caps).unwrap();
        s3.validate_full().unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());

        let not_aut = ActionSpec {
            images: vec![vec![0, 1, 2], vec![1, 0, 2]],
        };
        assert!(matches!(
            semidirect_product(&c3, &c2, &not_aut, &caps),
            Err(Error::ActionNotAutomorphism(_))
        ));
        // x ↦ x⁻¹ for every element of C3 is not a homomorphism from C3.
        let not_hom = ActionSpec {
            images: vec![vec![0, 1, 2], vec![0, 2, 1], vec![0, 2, 1]],
        };
        assert!(matches!(
            semidirect_product(&c3, &c3, &not_hom, &caps),
            Err(Error::ActionNotHomomorphism(_))
        ));
        assert!(matches!(
            semidirect_product(&s3, &c2, &ActionSpec::trivial(&s3, &c2), &caps),
            Err(Error::NotAbelianNormalFactor)
        ));
    }

    #[test]
    fn centers() {
        assert_eq!(center(&cyclic(5)).order(), 5);
        assert_eq!(center(&s3()).order(), 1);
        let z = center(&q8());
        assert_eq!(z.order(), 2);
        // the non-identity central element of Q8 is -1, of order 2
        let minus_one = z.members().iter().find(|&x| x != 0).unwrap();
        assert_eq!(element_order(&q8(), minus_one), 2);
    }

    #[test]
    fn nilpotency() {
        assert!(!is_nilpotent(&s3()));
        assert!(is_nilpotent(&q8()));
        assert!(is_nilpotent(&cyclic(6)));
        assert!(is_nilpotent(&cyclic(1)));
    }

    #[test]
    fn cayley_text_round_trip() {
        let g = q8();
        let text = g.to_cayley_text();
        let h = group_from_cayley_text(&text, "Q8", &Caps::default()).unwrap();
        assert!(g.rows().eq(h.rows()));
        assert!(parse_cayley_text("# only comment\n").is_err());
        assert!(parse_cayley_text("2\n0 1\n").is_err());
        assert!(parse_cayley_text("2\n0 1\n1 x\n").is_err());
    }
}
