//! The `compute` pipeline and its JSON and text renderings.

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use crate::analysis::Analysis;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::{is_nilpotent, GroupTable};
use crate::lattice::SubgroupId;
use crate::minrep::{enumerate_perfect_collections, greedy_minimal_collection, FaithfulCollection};
use crate::numbers::{rational_string, to_decimal, Rational};
use crate::oracle::{brute_force_min_degree, OracleOptions};
use crate::socle::central_ranks;

pub const SCHEMA_VERSION: u32 = 1;

/// Fractional digits of every decimal rendering.
pub const DECIMAL_DIGITS: u32 = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Greedy,
    Oracle,
    Both,
}

#[derive(Clone, Debug, Default)]
pub struct ComputeOptions {
    /// `None` picks greedy for socle friendly groups and the oracle otherwise.
    pub mode: Option<Mode>,
    pub all_perfect: bool,
    /// Run the greedy construction on groups that are not socle friendly.
    pub force: bool,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Delta {
    pub exact: String,
    pub decimal: String,
}

impl Delta {
    pub fn new(r: &Rational) -> Self {
        Delta {
            exact: rational_string(r),
            decimal: to_decimal(r, DECIMAL_DIGITS),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SubgroupRef {
    pub id: SubgroupId,
    pub order: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PrimeRank {
    pub p: u64,
    pub rank: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub subgroup: SubgroupRef,
    pub minimal_normal: SubgroupRef,
}

#[derive(Clone, Debug, Serialize)]
pub struct GreedySection {
    pub degree: u64,
    pub delta: Delta,
    pub members: Vec<SubgroupRef>,
    pub orbit_multiset: Vec<u64>,
    /// The group is not socle friendly, so the degree is only an upper bound.
    pub advisory: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PerfectSection {
    pub count: usize,
    pub orbit_multisets: Vec<Vec<u64>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleSection {
    pub degree: u64,
    pub delta: Delta,
    /// Number of minimal collections, counted as sets of subgroups.
    pub collection_count: String,
    /// Whether `collections` lists every minimum up to conjugacy.
    pub complete: bool,
    pub collections: Vec<Vec<SubgroupRef>>,
    pub orbit_multisets: Vec<Vec<u64>>,
    pub sizes: Vec<usize>,
    pub nodes_explored: u64,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub lattice_ms: u64,
    pub greedy_ms: u64,
    pub oracle_ms: u64,
    pub total_ms: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub group: String,
    pub order: usize,
    pub nilpotent: bool,
    pub socle_friendly: bool,
    pub socle_witness: Option<Witness>,
    pub subgroups: usize,
    pub subgroup_classes: usize,
    pub dim: usize,
    pub central_ranks: Vec<PrimeRank>,
    /// `d(G)`: from the oracle when it ran, otherwise from the greedy construction.
    pub degree: u64,
    pub delta: Delta,
    pub greedy: Option<GreedySection>,
    pub perfect: Option<PerfectSection>,
    pub oracle: Option<OracleSection>,
    /// Greedy and oracle disagree, or the greedy output is not among the minima.
    pub mismatch: bool,
    pub timing: Timing,
}

fn subgroup_ref(a: &Analysis, id: SubgroupId) -> SubgroupRef {
    SubgroupRef {
        id,
        order: a.lattice.get(id).order(),
    }
}

fn refs(a: &Analysis, c: &FaithfulCollection) -> Vec<SubgroupRef> {
    c.members().iter().map(|&h| subgroup_ref(a, h)).collect()
}

fn millis(since: Instant) -> u64 {
    since.elapsed().as_millis() as u64
}

/// Runs the pipeline on an already built group.
pub fn compute(group: GroupTable, options: &ComputeOptions, caps: &Caps) -> Result<(Report, Analysis)> {
    let start = Instant::now();
    let a = Analysis::new(group, caps)?;
    let lattice_ms = millis(start);
    let friendly = a.is_socle_friendly();
    let mode = options
        .mode
        .unwrap_or(if friendly { Mode::Greedy } else { Mode::Oracle });

    let t = Instant::now();
    let greedy = match mode {
        Mode::Greedy | Mode::Both if friendly || options.force => Some(greedy_minimal_collection(&a, options.force)?),
        Mode::Greedy => return Err(Error::NotSocleFriendly),
        _ => None,
    };
    let perfect = if options.all_perfect && friendly {
        let all = enumerate_perfect_collections(&a, caps)?;
        let mut multisets: Vec<Vec<u64>> = all.iter().map(|c| c.orbit_multiset().to_vec()).collect();
        multisets.sort();
        multisets.dedup();
        Some(PerfectSection {
            count: all.len(),
            orbit_multisets: multisets,
        })
    } else {
        None
    };
    let greedy_ms = millis(t);

    let t = Instant::now();
    let oracle = match mode {
        Mode::Oracle | Mode::Both => {
            let oracle_options = OracleOptions {
                incumbent: greedy.as_ref().filter(|_| friendly).map(|o| o.collection.degree()),
                scan_seed: options.seed,
            };
            Some(brute_force_min_degree(&a, caps, &oracle_options)?)
        }
        Mode::Greedy => None,
    };
    let oracle_ms = millis(t);

    let mut mismatch = false;
    if let (Some(gr), Some(or)) = (&greedy, &oracle) {
        if friendly {
            let sig = gr.collection.class_signature(&a.lattice);
            let listed = !or.complete
                || or
                    .minimal_collections
                    .iter()
                    .any(|m| m.class_signature(&a.lattice) == sig);
            mismatch = gr.collection.degree() != or.degree || !listed;
        }
    }

    let (degree, delta) = match (&oracle, &greedy) {
        (Some(or), _) => (or.degree, or.delta),
        (None, Some(gr)) => (gr.collection.degree(), gr.collection.delta()),
        (None, None) => unreachable!("one of greedy or oracle always runs"),
    };
    let report = Report {
        schema_version: SCHEMA_VERSION,
        group: a.group.label().to_string(),
        order: a.group.order(),
        nilpotent: is_nilpotent(&a.group),
        socle_friendly: friendly,
        socle_witness: a.friendliness.witness.map(|(h, n)| Witness {
            subgroup: subgroup_ref(&a, h),
            minimal_normal: subgroup_ref(&a, n),
        }),
        subgroups: a.lattice.len(),
        subgroup_classes: a.lattice.classes().len(),
        dim: a.socle.dim_g(),
        central_ranks: central_ranks(&a.group)
            .into_iter()
            .map(|(p, rank)| PrimeRank { p, rank })
            .collect(),
        degree,
        delta: Delta::new(&delta),
        greedy: greedy.as_ref().map(|o| GreedySection {
            degree: o.collection.degree(),
            delta: Delta::new(&o.collection.delta()),
            members: refs(&a, &o.collection),
            orbit_multiset: o.collection.orbit_multiset().to_vec(),
            advisory: o.advisory,
        }),
        perfect,
        oracle: oracle.as_ref().map(|o| OracleSection {
            degree: o.degree,
            delta: Delta::new(&o.delta),
            collection_count: o.collection_count.to_string(),
            complete: o.complete,
            collections: o.minimal_collections.iter().map(|c| refs(&a, c)).collect(),
            orbit_multisets: o.orbit_multisets.clone(),
            sizes: o.sizes.clone(),
            nodes_explored: o.nodes_explored,
            notes: o.notes.clone(),
        }),
        mismatch,
        timing: Timing {
            lattice_ms,
            greedy_ms,
            oracle_ms,
            total_ms: millis(start),
        },
    };
    Ok((report, a))
}

fn multisets(ms: &[Vec<u64>]) -> String {
    ms.iter()
        .map(|m| format!("{{{}}}", m.iter().map(u64::to_string).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn members(ms: &[SubgroupRef]) -> String {
    ms.iter()
        .map(|m| format!("#{}(|H|={})", m.id, m.order))
        .collect::<Vec<_>>()
        .join(" ")
}

impl Report {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let yes = |b: bool| if b { "yes" } else { "no" };
        let _ = writeln!(s, "group            {}", self.group);
        let _ = writeln!(s, "order            {}", self.order);
        let _ = writeln!(s, "subgroups        {} in {} classes", self.subgroups, self.subgroup_classes);
        let _ = writeln!(s, "nilpotent        {}", yes(self.nilpotent));
        let _ = writeln!(s, "socle friendly   {}", yes(self.socle_friendly));
        if let Some(w) = &self.socle_witness {
            let _ = writeln!(
                s,
                "  witness        H = #{} (order {}), N = #{} (order {})",
                w.subgroup.id, w.subgroup.order, w.minimal_normal.id, w.minimal_normal.order
            );
        }
        let _ = writeln!(s, "dim G            {}", self.dim);
        let ranks: Vec<String> = self.central_ranks.iter().map(|r| format!("e_{} = {}", r.p, r.rank)).collect();
        let _ = writeln!(s, "central ranks    {}", ranks.join(", "));
        let _ = writeln!(s, "d(G)             {}", self.degree);
        let _ = writeln!(s, "Δ(G)             {} = {}", self.delta.exact, self.delta.decimal);
        if let Some(g) = &self.greedy {
            let _ = writeln!(
                s,
                "greedy           d = {}{}, orbits {}, members {}",
                g.degree,
                if g.advisory { " (advisory upper bound)" } else { "" },
                multisets(std::slice::from_ref(&g.orbit_multiset)),
                members(&g.members)
            );
        }
        if let Some(p) = &self.perfect {
            let _ = writeln!(
                s,
                "perfect          {} up to conjugacy, orbits {}",
                p.count,
                multisets(&p.orbit_multisets)
            );
        }
        if let Some(o) = &self.oracle {
            let _ = writeln!(
                s,
                "oracle           d = {}, {} minimal collections, orbits {}",
                o.degree,
                o.collection_count,
                multisets(&o.orbit_multisets)
            );
            for c in &o.collections {
                let _ = writeln!(s, "  minimum        {}", members(c));
            }
            if !o.complete {
                let _ = writeln!(s, "  (list truncated by the enumeration cap)");
            }
            for note in &o.notes {
                let _ = writeln!(s, "  note           {note}");
            }
        }
        if self.mismatch {
            let _ = writeln!(s, "MISMATCH         greedy and oracle disagree");
        }
        let t = &self.timing;
        let _ = writeln!(
            s,
            "time             {} ms (lattice {}, greedy {}, oracle {})",
            t.total_ms, t.lattice_ms, t.greedy_ms, t.oracle_ms
        );
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::parse_group_spec;

    fn run(spec: &str, mode: Mode) -> Report {
        let caps = Caps::default();
        let g = parse_group_spec(spec).unwrap().build(&caps).unwrap();
        let options = ComputeOptions {
            mode: Some(mode),
            all_perfect: true,
            ..ComputeOptions::default()
        };
        compute(g, &options, &caps).unwrap().0
    }

    #[test]
    fn klein_four_both() {
        let r = run("C2 x C2", Mode::Both);
        assert_eq!(r.degree, 4);
        assert!(!r.mismatch);
        let o = r.oracle.unwrap();
        assert_eq!(o.orbit_multisets, vec![vec![2, 2], vec![4]]);
        assert_eq!(r.greedy.unwrap().orbit_multiset, vec![2, 2]);
    }

    #[test]
    fn heisenberg_both() {
        let r = run("heis:3", Mode::Both);
        assert_eq!(r.degree, 9);
        assert_eq!(r.delta.exact, "1/3");
        assert_eq!(r.delta.decimal, "0.333333333333");
    }

    #[test]
    fn saunders_oracle() {
        let r = run("saunders", Mode::Oracle);
        assert!(!r.socle_friendly);
        assert!(r.socle_witness.is_some());
        assert!(r.greedy.is_none() && r.perfect.is_none());
    }

    #[test]
    fn greedy_refused_without_force() {
        let caps = Caps::default();
        let g = parse_group_spec("saunders").unwrap().build(&caps).unwrap();
        let options = ComputeOptions {
            mode: Some(Mode::Greedy),
            ..ComputeOptions::default()
        };
        assert!(matches!(compute(g.clone(), &options, &caps), Err(Error::NotSocleFriendly)));
        let forced = ComputeOptions { force: true, ..options };
        assert!(compute(g, &forced, &caps).unwrap().0.greedy.unwrap().advisory);
    }

    #[test]
    fn text_rendering_mentions_degree() {
        let text = run("S3", Mode::Both).to_text();
        assert!(text.contains("d(G)             3"), "{text}");
    }
}
