//! Exact minimal degree by exhaustive search, independent of any structural
//! theorem about socle friendly groups.
//!
//! Two reductions keep the search small without losing minima. Members of a
//! minimal collection have pairwise distinct relative cores (a duplicate could
//! be dropped), and each member has the largest order among subgroups with its
//! relative core (otherwise swapping it for a larger one lowers the degree).
//! So the search runs over sets of relative-core values `R ≠ soc G`, each with
//! cost `[G:H]` for a largest `H` with `RC(H) = R`, and asks for a cheapest set
//! whose intersection is trivial. A memoized branch and bound over the current
//! intersection does this exactly; minima are then expanded back into
//! subgroups, one per conjugacy class.

use std::collections::{BTreeSet, HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::analysis::Analysis;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::is_nilpotent;
use crate::lattice::{core, SubgroupId};
use crate::minrep::{greedy_minimal_collection, is_greedy_reachable, FaithfulCollection};
use crate::numbers::Rational;
use crate::socle::central_ranks;

#[derive(Clone, Debug, Default)]
pub struct OracleOptions {
    /// Known upper bound on `d(G)`; defaults to `|G|`.
    pub incumbent: Option<u64>,
    /// Shuffles the candidate scan order. The result must not depend on it.
    pub scan_seed: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct OracleResult {
    pub degree: u64,
    pub delta: Rational,
    /// One collection per conjugacy-class signature, up to the enumeration cap.
    pub minimal_collections: Vec<FaithfulCollection>,
    /// Whether `minimal_collections` holds every minimum.
    pub complete: bool,
    /// Number of minimal collections up to conjugacy of members.
    pub collection_count: u128,
    /// Distinct orbit multisets over all minima, each ascending.
    pub orbit_multisets: Vec<Vec<u64>>,
    /// Distinct numbers of members over all minima, ascending.
    pub sizes: Vec<usize>,
    /// Relative cores of members of minima.
    pub member_relative_cores: Vec<SubgroupId>,
    pub nodes_explored: u64,
    pub notes: Vec<String>,
    group_order: u64,
}

impl OracleResult {
    /// Smallest order of a member over all minimal collections.
    pub fn ell(&self) -> Option<u64> {
        let largest_orbit = self.orbit_multisets.iter().filter_map(|m| m.last()).max()?;
        Some(self.group_order / largest_orbit)
    }
}

/// Normal subgroups inside the socle as bitsets over the socle's elements,
/// for allocation-free intersections.
struct TeeIndex {
    ids: Vec<SubgroupId>,
    words: usize,
    bits: Vec<u64>,
    lookup: FxHashMap<Box<[u64]>, usize>,
    trivial: usize,
    root: usize,
}

impl TeeIndex {
    fn new(a: &Analysis) -> Self {
        let lattice = &a.lattice;
        let socle = lattice.get(a.socle.socle()).members();
        let mut position = vec![u32::MAX; a.group.order()];
        for (i, x) in socle.iter().enumerate() {
            position[x as usize] = i as u32;
        }
        let words = socle.len().div_ceil(64);
        let ids = a.socle.tee().to_vec();
        let mut bits = vec![0u64; ids.len() * words];
        let mut lookup = FxHashMap::default();
        for (t, &id) in ids.iter().enumerate() {
            let row = &mut bits[t * words..(t + 1) * words];
            for x in lattice.get(id).members().iter() {
                let i = position[x as usize] as usize;
                row[i / 64] |= 1 << (i % 64);
            }
            lookup.insert(row.to_vec().into_boxed_slice(), t);
        }
        let local = |id: SubgroupId| ids.iter().position(|&t| t == id).expect("member of the socle lattice");
        TeeIndex {
            trivial: local(lattice.trivial()),
            root: local(a.socle.socle()),
            ids,
            words,
            bits,
            lookup,
        }
    }

    fn local(&self, id: SubgroupId) -> usize {
        self.ids.iter().position(|&t| t == id).expect("member of the socle lattice")
    }

    fn row(&self, t: usize) -> &[u64] {
        &self.bits[t * self.words..(t + 1) * self.words]
    }

    fn includes(&self, small: usize, big: usize) -> bool {
        self.row(small).iter().zip(self.row(big)).all(|(x, y)| x & !y == 0)
    }

    fn meet(&self, a: usize, b: usize, buf: &mut Vec<u64>) -> usize {
        buf.clear();
        buf.extend(self.row(a).iter().zip(self.row(b)).map(|(x, y)| x & y));
        self.lookup[buf.as_slice()]
    }
}

struct Candidate {
    rc: SubgroupId,
    /// `rc` as an index into the socle lattice.
    local: usize,
    cost: u64,
    /// One representative per conjugacy class of largest subgroups with this
    /// relative core.
    reps: Vec<SubgroupId>,
}

#[derive(Default)]
struct Entry {
    cost: u64,
    /// Candidate indices starting an optimal completion.
    moves: Vec<usize>,
    multisets: BTreeSet<Vec<u64>>,
    /// Weighted counts of optimal ordered completions, by length.
    sequences: Vec<u128>,
}

struct Search {
    tee: TeeIndex,
    candidates: Vec<Candidate>,
    min_cost: u64,
    memo: Vec<Option<Entry>>,
    buf: Vec<u64>,
    nodes: u64,
}

impl Search {
    fn solve(&mut self, state: usize, bound: u64) {
        if let Some(entry) = &self.memo[state] {
            // failures are stored with the bound they were computed under
            if !entry.sequences.is_empty() || entry.cost >= bound {
                return;
            }
        }
        self.nodes += 1;
        let mut entry = Entry {
            cost: bound,
            ..Entry::default()
        };
        if state == self.tee.trivial {
            entry.cost = 0;
            entry.multisets.insert(Vec::new());
            entry.sequences = vec![1];
            self.memo[state] = Some(entry);
            return;
        }
        let mut best = bound;
        let mut found = false;
        for i in 0..self.candidates.len() {
            let cand = &self.candidates[i];
            if cand.cost > best {
                continue;
            }
            if self.tee.includes(state, cand.local) {
                continue;
            }
            let next = self.tee.meet(state, cand.local, &mut self.buf);
            let floor = if next == self.tee.trivial { 0 } else { self.min_cost };
            if cand.cost + floor > best {
                continue;
            }
            let cost = cand.cost;
            self.solve(next, best - cost);
            let sub = self.memo[next].as_ref().expect("solved");
            if sub.sequences.is_empty() {
                continue;
            }
            let total = cost + sub.cost;
            if total > best {
                continue;
            }
            if !found || total < best {
                best = total;
                entry.moves.clear();
                found = true;
            }
            entry.moves.push(i);
        }
        if found {
            entry.cost = best;
            let mut sequences = Vec::new();
            for &i in &entry.moves {
                let cand = &self.candidates[i];
                let next = self.tee.meet(state, cand.local, &mut self.buf);
                let sub = self.memo[next].as_ref().expect("solved");
                for m in &sub.multisets {
                    let mut m = m.clone();
                    let at = m.partition_point(|&x| x < cand.cost);
                    m.insert(at, cand.cost);
                    entry.multisets.insert(m);
                }
                if sequences.len() < sub.sequences.len() + 1 {
                    sequences.resize(sub.sequences.len() + 1, 0u128);
                }
                let weight = cand.reps.len() as u128;
                for (len, &count) in sub.sequences.iter().enumerate() {
                    sequences[len + 1] = sequences[len + 1].saturating_add(count.saturating_mul(weight));
                }
            }
            entry.sequences = sequences;
        }
        self.memo[state] = Some(entry);
    }
}

fn build_candidates(a: &Analysis, tee: &TeeIndex, seed: Option<u64>) -> Vec<Candidate> {
    let lattice = &a.lattice;
    let socle = a.socle.socle();
    // largest order per relative core, then one representative per class
    let mut best: HashMap<SubgroupId, (usize, Vec<SubgroupId>)> = HashMap::new();
    for class in lattice.classes() {
        let h = class.representative;
        let rc = a.socle.rc(h);
        if rc == socle {
            continue;
        }
        let order = lattice.get(h).order();
        let slot = best.entry(rc).or_insert((0, Vec::new()));
        if order > slot.0 {
            *slot = (order, vec![h]);
        } else if order == slot.0 {
            slot.1.push(h);
        }
    }
    let mut candidates: Vec<Candidate> = best
        .into_iter()
        .map(|(rc, (order, mut reps))| {
            reps.sort_unstable();
            Candidate {
                rc,
                local: tee.local(rc),
                cost: a.order() / order as u64,
                reps,
            }
        })
        .collect();
    candidates.sort_by_key(|c| (c.cost, c.rc));
    if let Some(seed) = seed {
        candidates.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    candidates
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Exact `d(G)` and all minimal faithful collections.
pub fn brute_force_min_degree(a: &Analysis, caps: &Caps, options: &OracleOptions) -> Result<OracleResult> {
    let classes = a.lattice.classes().len();
    if classes > caps.oracle {
        return Err(Error::OracleCapExceeded {
            classes,
            cap: caps.oracle,
        });
    }
    let order = a.order();
    let tee = TeeIndex::new(a);
    let candidates = build_candidates(a, &tee, options.scan_seed);
    let incumbent = options.incumbent.unwrap_or(order);
    let root = tee.root;
    let mut search = Search {
        min_cost: candidates.iter().map(|c| c.cost).min().unwrap_or(0),
        candidates,
        memo: (0..tee.ids.len()).map(|_| None).collect(),
        tee,
        buf: Vec::new(),
        nodes: 0,
    };
    search.solve(root, incumbent);
    let Search {
        candidates,
        memo,
        nodes,
        tee,
        mut buf,
        ..
    } = search;
    let entry = |t: usize| memo[t].as_ref().expect("solved");
    let top = entry(root);
    if top.sequences.is_empty() {
        return Err(Error::InternalInvariantViolation(format!(
            "no faithful collection of degree at most {incumbent}"
        )));
    }
    let degree = top.cost;
    let collection_count: u128 = top
        .sequences
        .iter()
        .enumerate()
        .map(|(len, &count)| count / factorial(len))
        .sum();
    let sizes: Vec<usize> = (0..top.sequences.len()).filter(|&k| top.sequences[k] > 0).collect();

    // Relative cores appearing along optimal moves.
    let mut member_rcs = BTreeSet::new();
    let mut seen = HashSet::new();
    let mut stack = vec![root];
    while let Some(state) = stack.pop() {
        if !seen.insert(state) {
            continue;
        }
        for &i in &entry(state).moves {
            member_rcs.insert(candidates[i].rc);
            stack.push(tee.meet(state, candidates[i].local, &mut buf));
        }
    }

    // Expand optimal candidate sets, visiting each set once in increasing
    // candidate order, then every choice of class representatives.
    let mut minimal_collections = Vec::new();
    let mut complete = true;
    let mut steps_left = caps.enumeration.saturating_mul(64);
    let mut stack: Vec<(usize, Vec<usize>)> = vec![(root, Vec::new())];
    'outer: while let Some((state, chosen)) = stack.pop() {
        if steps_left == 0 {
            complete = false;
            break;
        }
        steps_left -= 1;
        if state == tee.trivial {
            let mut choice = vec![0usize; chosen.len()];
            loop {
                if minimal_collections.len() >= caps.enumeration {
                    complete = false;
                    break 'outer;
                }
                let members = chosen.iter().zip(&choice).map(|(&i, &j)| candidates[i].reps[j]).collect();
                minimal_collections.push(FaithfulCollection::new(a, members));
                let mut k = 0;
                while k < choice.len() {
                    choice[k] += 1;
                    if choice[k] < candidates[chosen[k]].reps.len() {
                        break;
                    }
                    choice[k] = 0;
                    k += 1;
                }
                if k == choice.len() {
                    break;
                }
            }
            continue;
        }
        let last = chosen.last().copied();
        for &i in entry(state).moves.iter().rev() {
            if last.is_some_and(|l| i <= l) {
                continue;
            }
            let mut next = chosen.clone();
            next.push(i);
            stack.push((tee.meet(state, candidates[i].local, &mut buf), next));
        }
    }
    minimal_collections.sort_by_key(|c| c.class_signature(&a.lattice));
    if complete && minimal_collections.len() as u128 != collection_count {
        return Err(Error::InternalInvariantViolation(format!(
            "enumerated {} minimal collections, counted {collection_count}",
            minimal_collections.len()
        )));
    }
    let mut notes = Vec::new();
    if !complete {
        notes.push(format!(
            "listed {} of {collection_count} minimal collections",
            minimal_collections.len()
        ));
    }
    Ok(OracleResult {
        degree,
        delta: Rational::new(degree, order.max(1)),
        minimal_collections,
        complete,
        collection_count,
        orbit_multisets: top.multisets.iter().cloned().collect(),
        sizes,
        member_relative_cores: member_rcs.into_iter().collect(),
        nodes_explored: nodes,
        notes,
        group_order: order,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetOracleResult {
    pub degree: u64,
    /// Sorted conjugacy-class signatures of all minima.
    pub signatures: Vec<Vec<usize>>,
    pub subsets_checked: u64,
}

/// Plain subset enumeration over all subgroups, with cores computed from
/// the multiplication table. A faithful collection with no redundant member
/// gives a strictly decreasing chain of normal subgroups, so only subsets of
/// size at most `log₂|G|` are examined.
pub fn subset_enumeration_oracle(a: &Analysis) -> SubsetOracleResult {
    let g = &a.group;
    let lattice = &a.lattice;
    let n = g.order();
    let max_size = (usize::BITS - 1 - n.max(1).leading_zeros()) as usize;
    let cores: Vec<_> = lattice.subgroups().iter().map(|h| core(g, h).members().clone()).collect();
    let index: Vec<u64> = lattice.subgroups().iter().map(|h| h.index() as u64).collect();
    let mut best = u64::MAX;
    let mut minima: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut checked = 0u64;
    // (next subgroup to consider, members so far, intersection of cores, degree)
    let full = crate::bitset::ElementSet::full(n);
    let mut stack = vec![(0usize, Vec::<usize>::new(), full, 0u64)];
    while let Some((start, members, inter, degree)) = stack.pop() {
        checked += 1;
        if inter.len() == 1 {
            if degree < best {
                best = degree;
                minima.clear();
            }
            if degree == best {
                let mut sig: Vec<usize> = members.iter().map(|&h| lattice.class_of(h)).collect();
                sig.sort_unstable();
                minima.insert(sig);
            }
        }
        if members.len() == max_size {
            continue;
        }
        for h in start..lattice.len() {
            let mut next = members.clone();
            next.push(h);
            stack.push((h + 1, next, inter.intersection(&cores[h]), degree + index[h]));
        }
    }
    SubsetOracleResult {
        degree: best,
        signatures: minima.into_iter().collect(),
        subsets_checked: checked,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MainTheoremReport {
    pub applicable: bool,
    pub expected_orbits: usize,
    pub central_ranks: Vec<(u64, usize)>,
    pub orbit_counts: Vec<usize>,
    pub orbit_multisets: Vec<Vec<u64>>,
    pub orbit_count_holds: bool,
    pub multiset_unique: bool,
}

impl MainTheoremReport {
    pub fn holds(&self) -> bool {
        self.orbit_count_holds && self.multiset_unique
    }
}

/// For nilpotent groups of odd order every minimal collection has `Σ_p e_p`
/// members and all minima share an orbit multiset.
pub fn verify_main_theorem(a: &Analysis, oracle: &OracleResult) -> MainTheoremReport {
    let applicable = a.order() % 2 == 1 && is_nilpotent(&a.group);
    let central_ranks = central_ranks(&a.group);
    let expected_orbits = central_ranks.iter().map(|&(_, e)| e).sum();
    MainTheoremReport {
        applicable,
        expected_orbits,
        central_ranks,
        orbit_counts: oracle.sizes.clone(),
        orbit_multisets: oracle.orbit_multisets.clone(),
        orbit_count_holds: oracle.sizes == [expected_orbits],
        multiset_unique: oracle.orbit_multisets.len() == 1,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossCheckReport {
    pub socle_friendly: bool,
    pub greedy_degree: Option<u64>,
    pub oracle_degree: u64,
    pub degrees_agree: Option<bool>,
    pub greedy_among_minima: Option<bool>,
    /// Minima of size `dim G` reachable by some greedy run; `None` when the
    /// group is not socle friendly or the minima were not all listed.
    pub perfect_minima_reachable: Option<bool>,
    pub notes: Vec<String>,
}

impl CrossCheckReport {
    pub fn holds(&self) -> bool {
        self.degrees_agree != Some(false)
            && self.greedy_among_minima != Some(false)
            && self.perfect_minima_reachable != Some(false)
    }
}

/// Greedy against the exact search.
pub fn cross_check(a: &Analysis, caps: &Caps) -> Result<(CrossCheckReport, OracleResult)> {
    let friendly = a.is_socle_friendly();
    let greedy = if friendly { Some(greedy_minimal_collection(a, false)?) } else { None };
    let options = OracleOptions {
        incumbent: greedy.as_ref().map(|o| o.collection.degree()),
        ..OracleOptions::default()
    };
    let oracle = brute_force_min_degree(a, caps, &options)?;
    let mut notes = Vec::new();
    if !friendly {
        notes.push("greedy refused: group is not socle friendly".to_string());
    }
    let greedy_among_minima = greedy.as_ref().map(|o| {
        let c = &o.collection;
        let by_degree = c.is_faithful() && c.degree() == oracle.degree;
        let listed = !oracle.complete || {
            let sig = c.class_signature(&a.lattice);
            oracle
                .minimal_collections
                .iter()
                .any(|m| m.class_signature(&a.lattice) == sig)
        };
        by_degree && listed
    });
    let perfect_minima_reachable = (friendly && oracle.complete).then(|| {
        let dim = a.socle.dim_g();
        oracle
            .minimal_collections
            .iter()
            .filter(|c| c.len() == dim)
            .all(|c| is_greedy_reachable(a, c.members()))
    });
    if friendly && !oracle.complete {
        notes.push("greedy reachability skipped: minima not fully listed".to_string());
    }
    let report = CrossCheckReport {
        socle_friendly: friendly,
        greedy_degree: greedy.as_ref().map(|o| o.collection.degree()),
        oracle_degree: oracle.degree,
        degrees_agree: greedy.as_ref().map(|o| o.collection.degree() == oracle.degree),
        greedy_among_minima,
        perfect_minima_reachable,
        notes,
    };
    Ok((report, oracle))
}
