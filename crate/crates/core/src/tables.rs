//! Sums of `Δ` over all groups of a prime-power order, and the
//! `Δ(C_n × C_p)` sweep towards `1/n`.

use std::path::Path;

use serde::Serialize;

use crate::analysis::Analysis;
use crate::caps::Caps;
use crate::catalog::{abelian_p_groups, order_p2_specs, order_p3_specs, GroupSpec};
use crate::error::{Error, Result};
use crate::group::{group_from_cayley_text, GroupTable};
use crate::minrep::greedy_minimal_collection;
use crate::numbers::{is_prime, Rational};
use crate::oracle::{brute_force_min_degree, OracleOptions};

/// Exact `Δ(G)` by the exhaustive search, seeded with the greedy degree when
/// the group is socle friendly.
pub fn exact_delta(g: GroupTable, caps: &Caps) -> Result<(Analysis, Rational)> {
    let a = Analysis::new(g, caps)?;
    let incumbent = if a.is_socle_friendly() {
        Some(greedy_minimal_collection(&a, false)?.collection.degree())
    } else {
        None
    };
    let oracle = brute_force_min_degree(
        &a,
        caps,
        &OracleOptions {
            incumbent,
            ..OracleOptions::default()
        },
    )?;
    Ok((a, oracle.delta))
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupDelta {
    pub group: String,
    #[serde(serialize_with = "crate::numbers::serialize_rational")]
    pub delta: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct SumDeltaReport {
    pub k: u32,
    pub p: u64,
    pub groups: Vec<GroupDelta>,
    #[serde(serialize_with = "crate::numbers::serialize_rational")]
    pub sum: Rational,
    #[serde(serialize_with = "crate::numbers::serialize_rational")]
    pub closed_form: Rational,
    pub matches: bool,
}

/// `1`, `1 + 2/p` and `1 + 3/p + 4/p²` for `k = 1, 2, 3`.
pub fn sum_delta_closed_form(k: u32, p: u64) -> Rational {
    let r = |n: u64, d: u64| Rational::new(n, d);
    match k {
        1 => r(1, 1),
        2 => r(1, 1) + r(2, p),
        3 => r(1, 1) + r(3, p) + r(4, p * p),
        _ => panic!("no closed form for k = {k}"),
    }
}

/// `1 + 5/p + 11/p² + 9/p³`, conjectured for `p > 3`.
pub fn conjecture_p4_closed_form(p: u64) -> Rational {
    Rational::from_integer(1) + Rational::new(5, p) + Rational::new(11, p * p) + Rational::new(9, p * p * p)
}

fn sum_over(specs: &[GroupSpec], caps: &Caps) -> Result<(Vec<GroupDelta>, Rational)> {
    let mut groups = Vec::new();
    let mut sum = Rational::from_integer(0);
    for spec in specs {
        let (_, delta) = exact_delta(spec.build(caps)?, caps)?;
        sum += delta;
        groups.push(GroupDelta {
            group: spec.to_string(),
            delta,
        });
    }
    Ok((groups, sum))
}

/// `Σ Δ(G)` over every group of order `p^k`, `k ≤ 3`, `p` an odd prime.
pub fn sum_delta(k: u32, p: u64, caps: &Caps) -> Result<SumDeltaReport> {
    if p == 2 || !is_prime(p) {
        return Err(Error::ParameterOutOfRange(format!("p must be an odd prime, got {p}")));
    }
    let specs = match k {
        1 => vec![GroupSpec::Cyclic(p)],
        2 => order_p2_specs(p)?,
        3 => order_p3_specs(p)?,
        _ => {
            return Err(Error::ParameterOutOfRange(format!(
                "complete classifications are built in for k ≤ 3 only, got k = {k}"
            )))
        }
    };
    let (groups, sum) = sum_over(&specs, caps)?;
    let closed_form = sum_delta_closed_form(k, p);
    Ok(SumDeltaReport {
        k,
        p,
        groups,
        sum,
        closed_form,
        matches: sum == closed_form,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ConjectureReport {
    pub p: u64,
    /// The conjecture is stated for `p > 3`.
    pub advisory: bool,
    pub abelian: Vec<GroupDelta>,
    #[serde(serialize_with = "crate::numbers::serialize_rational")]
    pub abelian_sum: Rational,
    pub tables_found: usize,
    /// Present when all fifteen tables were supplied.
    pub full: Option<FullSum>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FullSum {
    pub groups: Vec<GroupDelta>,
    #[serde(serialize_with = "crate::numbers::serialize_rational")]
    pub sum: Rational,
    #[serde(serialize_with = "crate::numbers::serialize_rational")]
    pub closed_form: Rational,
    pub matches: bool,
}

pub const GROUPS_OF_ORDER_P4: usize = 15;

/// Abelian groups of order `p⁴` are built here; the full sum needs Cayley
/// tables of all fifteen groups of order `p⁴`, one per file in `tables_dir`.
/// With fewer files the report carries only the abelian part.
pub fn conjecture_p4(p: u64, tables_dir: Option<&Path>, caps: &Caps) -> Result<ConjectureReport> {
    if !is_prime(p) {
        return Err(Error::ParameterOutOfRange(format!("p must be prime, got {p}")));
    }
    let (abelian, abelian_sum) = sum_over(&abelian_p_groups(p, 4), caps)?;
    let mut files = Vec::new();
    if let Some(dir) = tables_dir {
        for entry in std::fs::read_dir(dir)? {
            let path = entry?.path();
            if path.is_file() {
                files.push(path);
            }
        }
    }
    files.sort();
    if files.len() > GROUPS_OF_ORDER_P4 {
        return Err(Error::ParameterOutOfRange(format!(
            "expected {GROUPS_OF_ORDER_P4} tables, found {}",
            files.len()
        )));
    }
    let full = if files.len() == GROUPS_OF_ORDER_P4 {
        let mut groups = Vec::new();
        let mut sum = Rational::from_integer(0);
        for path in &files {
            let label = path.file_name().unwrap_or_default().to_string_lossy().into_owned();
            let g = group_from_cayley_text(&std::fs::read_to_string(path)?, &label, caps)?;
            if g.order() as u64 != p.pow(4) {
                return Err(Error::ParameterOutOfRange(format!(
                    "{label} has order {}, expected {}",
                    g.order(),
                    p.pow(4)
                )));
            }
            let (_, delta) = exact_delta(g, caps)?;
            sum += delta;
            groups.push(GroupDelta { group: label, delta });
        }
        let closed_form = conjecture_p4_closed_form(p);
        Some(FullSum {
            groups,
            sum,
            closed_form,
            matches: sum == closed_form,
        })
    } else {
        None
    };
    Ok(ConjectureReport {
        p,
        advisory: p <= 3,
        abelian,
        abelian_sum,
        tables_found: files.len(),
        full,
    })
}

impl ConjectureReport {
    /// `MissingTables` unless all fifteen tables were supplied.
    pub fn require_full(&self) -> Result<&FullSum> {
        self.full.as_ref().ok_or(Error::MissingTables {
            expected: GROUPS_OF_ORDER_P4,
            found: self.tables_found,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LimitRow {
    pub p: u64,
    #[serde(serialize_with = "crate::numbers::serialize_rational")]
    pub delta: Rational,
    /// `1/n + Δ(C_n)/p`.
    #[serde(serialize_with = "crate::numbers::serialize_rational")]
    pub predicted: Rational,
    pub matches: bool,
    /// `Δ(C_n × C_p) − 1/n`.
    #[serde(serialize_with = "crate::numbers::serialize_rational")]
    pub excess: Rational,
}

#[derive(Clone, Debug, Serialize)]
pub struct LimitSweep {
    pub n: u64,
    #[serde(serialize_with = "crate::numbers::serialize_rational")]
    pub delta_cn: Rational,
    #[serde(serialize_with = "crate::numbers::serialize_rational")]
    pub limit: Rational,
    pub rows: Vec<LimitRow>,
}

/// `Δ(C_n × C_p)` for primes `p > n` not dividing `n`, compared with
/// `1/n + Δ(C_n)/p`.
pub fn limit_sweep(n: u64, primes: &[u64], caps: &Caps) -> Result<LimitSweep> {
    if n == 0 {
        return Err(Error::ParameterOutOfRange("n must be positive".into()));
    }
    for &p in primes {
        if !is_prime(p) {
            return Err(Error::ParameterOutOfRange(format!("{p} is not prime")));
        }
        if n % p == 0 {
            return Err(Error::NonCoprime { n, p });
        }
        if p <= n {
            return Err(Error::ParameterOutOfRange(format!("need p > n, got p = {p}, n = {n}")));
        }
    }
    let (_, delta_cn) = exact_delta(GroupSpec::Cyclic(n).build(caps)?, caps)?;
    let limit = Rational::new(1, n);
    let mut rows = Vec::new();
    for &p in primes {
        let spec = GroupSpec::Product(vec![GroupSpec::Cyclic(n), GroupSpec::Cyclic(p)]);
        let (_, delta) = exact_delta(spec.build(caps)?, caps)?;
        let predicted = limit + delta_cn / p;
        rows.push(LimitRow {
            p,
            delta,
            predicted,
            matches: delta == predicted,
            excess: delta - limit,
        });
    }
    Ok(LimitSweep {
        n,
        delta_cn,
        limit,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        assert_eq!(sum_delta_closed_form(2, 5), Rational::new(7, 5));
        assert_eq!(sum_delta_closed_form(3, 3), Rational::new(22, 9));
        assert_eq!(conjecture_p4_closed_form(3), Rational::new(27 + 45 + 33 + 9, 27));
    }

    #[test]
    fn small_sums() {
        let caps = Caps::default();
        let r = sum_delta(1, 7, &caps).unwrap();
        assert!(r.matches);
        assert_eq!(r.sum, Rational::from_integer(1));
        let r = sum_delta(2, 5, &caps).unwrap();
        assert_eq!(r.sum, Rational::new(7, 5));
        assert!(r.matches);
        let r = sum_delta(3, 3, &caps).unwrap();
        assert_eq!(r.sum, Rational::new(22, 9));
        let deltas: Vec<Rational> = r.groups.iter().map(|g| g.delta).collect();
        assert_eq!(
            deltas,
            vec![
                Rational::from_integer(1),
                Rational::new(3, 9),
                Rational::new(1, 3) + Rational::new(1, 9),
                Rational::new(1, 3),
                Rational::new(1, 3),
            ]
        );
        assert!(matches!(sum_delta(2, 2, &caps), Err(Error::ParameterOutOfRange(_))));
        assert!(matches!(sum_delta(4, 3, &caps), Err(Error::ParameterOutOfRange(_))));
    }

    #[test]
    fn abelian_p4_part() {
        let caps = Caps::default();
        let report = conjecture_p4(3, None, &caps).unwrap();
        assert!(report.advisory && report.full.is_none());
        assert!(matches!(
            report.require_full(),
            Err(Error::MissingTables { expected: 15, found: 0 })
        ));
        // d of an abelian p-group is the sum of its cyclic factors
        let expected: Rational = abelian_p_groups(3, 4)
            .iter()
            .map(|spec| match spec {
                GroupSpec::Abelian(parts) => Rational::new(parts.iter().sum(), 81),
                _ => unreachable!(),
            })
            .sum();
        assert_eq!(report.abelian_sum, expected);
    }

    #[test]
    fn limit_rows() {
        let caps = Caps::default();
        let sweep = limit_sweep(2, &[5], &caps).unwrap();
        assert_eq!(sweep.rows[0].delta, Rational::new(7, 10));
        let sweep = limit_sweep(3, &[7], &caps).unwrap();
        assert_eq!(sweep.rows[0].delta, Rational::new(10, 21));
        assert!(sweep.rows[0].matches);
        let sweep = limit_sweep(1, &[2, 3, 5], &caps).unwrap();
        assert!(sweep.rows.iter().all(|r| r.delta == Rational::from_integer(1)));
        assert!(matches!(limit_sweep(6, &[3], &caps), Err(Error::NonCoprime { n: 6, p: 3 })));
        assert!(matches!(limit_sweep(6, &[5], &caps), Err(Error::ParameterOutOfRange(_))));
        assert!(matches!(limit_sweep(2, &[9], &caps), Err(Error::ParameterOutOfRange(_))));
    }
}
