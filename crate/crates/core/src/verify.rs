//! Property suites run against single groups or a built-in battery.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::Analysis;
use crate::caps::Caps;
use crate::catalog::GroupSpec;
use crate::error::{Error, Result};
use crate::group::is_nilpotent;
use crate::minrep::{
    check_matroid_axioms, ell_sandwich_check, replace_codim_ge2, small_dim_bound_check,
};
use crate::numbers::rational_string;
use crate::oracle::{cross_check, verify_main_theorem, OracleResult};
use crate::socle::{central_involution_count, SocleFriendliness};
use crate::tables::exact_delta;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    MainTheorem,
    Matroid,
    Replacement,
    Bounds,
    SocleFriendly,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::MainTheorem,
        Suite::Matroid,
        Suite::Replacement,
        Suite::Bounds,
        Suite::SocleFriendly,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::MainTheorem => "main-theorem",
            Suite::Matroid => "matroid",
            Suite::Replacement => "replacement",
            Suite::Bounds => "bounds",
            Suite::SocleFriendly => "socle-friendly",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::ParameterOutOfRange(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        }
    }

    /// A property that does not apply to this group.
    fn skipped(name: &str, why: impl Into<String>) -> Self {
        Check::new(name, true, format!("not applicable: {}", why.into()))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub group: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn oracle_for(a: &Analysis, caps: &Caps) -> Result<OracleResult> {
    Ok(cross_check(a, caps)?.1)
}

fn main_theorem(a: &Analysis, caps: &Caps) -> Result<Vec<Check>> {
    let oracle = oracle_for(a, caps)?;
    let report = verify_main_theorem(a, &oracle);
    let mut checks = Vec::new();
    let detail = format!(
        "orbit counts {:?}, Σ e_p = {}, orbit multisets {:?}",
        report.orbit_counts, report.expected_orbits, report.orbit_multisets
    );
    if report.applicable {
        checks.push(Check::new("orbit count equals Σ e_p", report.orbit_count_holds, detail.clone()));
        checks.push(Check::new("single orbit multiset", report.multiset_unique, detail));
    } else {
        checks.push(Check::skipped("orbit count equals Σ e_p", format!("not nilpotent of odd order; {detail}")));
    }
    let name = "minima are perfect and lie in the codimension-one set";
    if a.is_socle_friendly() && central_involution_count(&a.group) <= 1 {
        let dim = a.socle.dim_g();
        let in_a = oracle
            .member_relative_cores
            .iter()
            .all(|&rc| dim - a.socle.dim_of_tee(rc).unwrap_or(dim) == 1);
        let perfect = oracle.sizes.iter().all(|&s| s == dim);
        checks.push(Check::new(
            name,
            in_a && perfect,
            format!("sizes {:?}, dim G = {dim}", oracle.sizes),
        ));
    } else {
        checks.push(Check::skipped(name, "needs a socle friendly group with at most one central involution"));
    }
    let name = "perfect minima share one orbit multiset";
    if a.is_socle_friendly() {
        let dim = a.socle.dim_g();
        let perfect: std::collections::BTreeSet<&Vec<u64>> =
            oracle.orbit_multisets.iter().filter(|m| m.len() == dim).collect();
        checks.push(Check::new(name, perfect.len() == 1, format!("{perfect:?}")));
    } else {
        checks.push(Check::skipped(name, "not socle friendly"));
    }
    Ok(checks)
}

fn matroid(a: &Analysis) -> Vec<Check> {
    let name = "heredity, rank and exchange";
    if !a.is_socle_friendly() {
        return vec![Check::skipped(name, "not socle friendly")];
    }
    match check_matroid_axioms(a, 64) {
        Ok(s) => vec![Check::new(
            name,
            true,
            format!(
                "{} codimension-one subgroups, {} independent sets, {} exchange pairs, rank {}",
                s.ground_size, s.independent_sets, s.exchange_pairs, s.rank
            ),
        )],
        Err(e) => vec![Check::new(name, false, e)],
    }
}

fn replacement(a: &Analysis) -> Result<Vec<Check>> {
    let name = "replacement postconditions";
    if !a.is_socle_friendly() {
        return Ok(vec![Check::skipped(name, "not socle friendly")]);
    }
    let lattice = &a.lattice;
    let strict_required = central_involution_count(&a.group) < 2;
    let mut tested = 0;
    let mut failures = Vec::new();
    for h in 0..lattice.len() {
        if a.socle.codim(h) < 2 {
            continue;
        }
        tested += 1;
        let r = replace_codim_ge2(a, h)?;
        let contains = lattice.includes(h, r.h1) && lattice.includes(h, r.h2);
        let rc_ok = lattice.meet(a.socle.rc(r.h1), a.socle.rc(r.h2)) == a.socle.rc(h);
        if !contains || !rc_ok || (strict_required && !r.strict) {
            failures.push(h);
        }
    }
    Ok(vec![Check::new(
        name,
        failures.is_empty(),
        format!("{tested} subgroups of codimension ≥ 2, failures {failures:?}"),
    )])
}

/// Largest number of subgroup classes compared against `G` for monotonicity.
const MONOTONICITY_SAMPLE: usize = 40;

fn bounds(a: &Analysis, caps: &Caps) -> Result<Vec<Check>> {
    let oracle = oracle_for(a, caps)?;
    let mut checks = Vec::new();
    let small = small_dim_bound_check(a, oracle.delta);
    checks.push(Check::new(
        "Δ ≤ k / 2^(k-1)",
        small.holds && small.witness_faithful && small.witness_delta <= small.bound,
        format!(
            "Δ = {}, k = {}, bound {}, witness Δ = {}",
            rational_string(&small.delta),
            small.dim,
            rational_string(&small.bound),
            rational_string(&small.witness_delta)
        ),
    ));
    let ell = ell_sandwich_check(a, &oracle);
    checks.push(Check::new(
        "1/ℓ ≤ Δ ≤ 1/ℓ + 1/|P|",
        ell.holds,
        format!(
            "ℓ = {}, {} cyclic prime-power subgroups",
            ell.ell.map_or("none".to_string(), |l| l.to_string()),
            ell.checks.len()
        ),
    ));
    // Nontrivial proper subgroups, one per conjugacy class, spread evenly
    // over the lattice when there are many.
    let reps: Vec<usize> = a
        .lattice
        .classes()
        .iter()
        .map(|c| c.representative)
        .filter(|&h| h != a.lattice.trivial() && h != a.lattice.whole())
        .collect();
    let step = reps.len().div_ceil(MONOTONICITY_SAMPLE).max(1);
    let sample: Vec<usize> = reps.into_iter().step_by(step).collect();
    let results: Vec<Result<(usize, u64, crate::numbers::Rational)>> = sample
        .par_iter()
        .map(|&h| {
            let sub = a.lattice.get(h).as_group(&a.group, format!("subgroup {h}"));
            let (sa, delta) = exact_delta(sub, caps)?;
            Ok((h, (delta * sa.order()).to_integer(), delta))
        })
        .collect();
    let mut failures = Vec::new();
    for r in results {
        let (h, d_h, delta_h) = r?;
        if d_h > oracle.degree || oracle.delta > delta_h {
            failures.push(h);
        }
    }
    checks.push(Check::new(
        "d(H) ≤ d(G) and Δ(G) ≤ Δ(H)",
        failures.is_empty(),
        format!("{} subgroups, failures {failures:?}", sample.len()),
    ));
    Ok(checks)
}

/// Socle friendliness straight from the definition, over every subgroup and
/// every normal subgroup inside the socle.
pub fn socle_friendly_by_definition(a: &Analysis) -> SocleFriendliness {
    let (g, lattice, socle) = (&a.group, &a.lattice, &a.socle);
    for h in 0..lattice.len() {
        for &t in socle.tee() {
            let lhs = socle.rc(lattice.join(g, h, t));
            let rhs = lattice.join(g, socle.rc(h), t);
            if lhs != rhs {
                return SocleFriendliness {
                    friendly: false,
                    witness: Some((h, t)),
                };
            }
        }
    }
    SocleFriendliness {
        friendly: true,
        witness: None,
    }
}

fn socle_friendly(a: &Analysis, caps: &Caps) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let direct = socle_friendly_by_definition(a);
    checks.push(Check::new(
        "atom test agrees with the definition",
        direct.friendly == a.is_socle_friendly(),
        format!("friendly: {}", a.is_socle_friendly()),
    ));
    if is_nilpotent(&a.group) {
        checks.push(Check::new("nilpotent groups are socle friendly", a.is_socle_friendly(), ""));
    }
    if let Some((w, n)) = a.friendliness.witness {
        let (g, lattice, socle) = (&a.group, &a.lattice, &a.socle);
        let lhs = socle.rc(lattice.join(g, w, n));
        let rhs = lattice.join(g, socle.rc(w), n);
        checks.push(Check::new(
            "witness violates RC(H·N) = RC(H)·N",
            lhs != rhs,
            format!(
                "H = {w}, N = {n}: |RC(H·N)| = {}, |RC(H)·N| = {}",
                lattice.get(lhs).order(),
                lattice.get(rhs).order()
            ),
        ));
    }
    let (report, _) = cross_check(a, caps)?;
    if report.socle_friendly {
        checks.push(Check::new(
            "greedy degree equals exact degree",
            report.holds(),
            format!(
                "greedy {:?}, exact {}, greedy among minima {:?}, perfect minima reachable {:?}",
                report.greedy_degree, report.oracle_degree, report.greedy_among_minima, report.perfect_minima_reachable
            ),
        ));
    }
    Ok(checks)
}

pub fn run_suite(suite: Suite, spec: &GroupSpec, caps: &Caps) -> Result<SuiteReport> {
    let a = Analysis::new(spec.build(caps)?, caps)?;
    run_suite_on(suite, &a, caps)
}

pub fn run_suite_on(suite: Suite, a: &Analysis, caps: &Caps) -> Result<SuiteReport> {
    let checks = match suite {
        Suite::MainTheorem => main_theorem(a, caps)?,
        Suite::Matroid => matroid(a),
        Suite::Replacement => replacement(a)?,
        Suite::Bounds => bounds(a, caps)?,
        Suite::SocleFriendly => socle_friendly(a, caps)?,
    };
    Ok(SuiteReport {
        suite,
        group: a.group.label().to_string(),
        checks,
    })
}

/// Groups used when no group is named.
pub fn default_battery() -> Vec<GroupSpec> {
    [
        "C1", "C12", "C2 x C2", "ab:2,2,2", "C3 x C3", "ab:3,3,3", "C2 x C2 x C3", "C5 x C5", "ab:9,3", "D4",
        "Q8", "Q16", "D5", "S3", "S4", "heis:3", "modp3:3", "heis:3 x C3", "C3 x S3", "saunders",
    ]
    .iter()
    .map(|s| crate::catalog::parse_group_spec(s).expect("battery entries parse"))
    .collect()
}

/// Runs a suite over many groups in parallel; results keep input order.
pub fn run_battery(suite: Suite, specs: &[GroupSpec], caps: &Caps) -> Vec<Result<SuiteReport>> {
    specs.par_iter().map(|spec| run_suite(suite, spec, caps)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::parse_group_spec;

    fn run(suite: Suite, s: &str) -> SuiteReport {
        run_suite(suite, &parse_group_spec(s).unwrap(), &Caps::default()).unwrap()
    }

    #[test]
    fn suite_names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>().unwrap(), suite);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn main_theorem_examples() {
        let r = run(Suite::MainTheorem, "C9 x C3");
        assert!(r.passed(), "{r:?}");
        assert!(r.checks[0].detail.contains("[[3, 9]]"));
        let r = run(Suite::MainTheorem, "heis:3");
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn every_suite_passes_on_defaults() {
        for suite in Suite::ALL {
            for (spec, r) in default_battery().iter().zip(run_battery(suite, &default_battery(), &Caps::default())) {
                let r = r.unwrap();
                assert!(r.passed(), "{suite} on {spec}: {r:?}");
            }
        }
    }

    #[test]
    fn saunders_witness() {
        let r = run(Suite::SocleFriendly, "saunders");
        assert!(r.passed());
        assert!(r.checks.iter().any(|c| c.name.starts_with("witness")));
    }
}
