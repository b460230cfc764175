//! Named group families and a small language for naming them.
//!
//! Grammar (whitespace between tokens is ignored):
//!
//! ```text
//! spec    := factor ( "x" factor )*
//! factor  := "C" n            cyclic of order n
//!          | "D" n            dihedral of order 2n
//!          | "Q" n            quaternion, n ∈ {8, 16}
//!          | "S" n            symmetric group on n points
//!          | "heis:" p        unitriangular 3×3 matrices over F_p, p odd
//!          | "modp3:" p       ⟨a, b | a^(p²) = b^p = 1, b⁻¹ab = a^(1+p)⟩, p odd
//!          | "saunders" [":" p [":" m]]
//!                             F_p² ⋊ C_m, generator acting by (a, b) ↦ (a, ωb)
//!                             with ω of order m; defaults p = 3, m = 2
//!          | "ab:" n ("," n)* product of cyclic groups of prime-power order
//!          | "file:" path     Cayley table in text form; the path runs to the
//!                             next " x " or the end of the input
//! ```

use std::fmt;
use std::path::PathBuf;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::{
    center, direct_product, group_from_cayley_text, group_from_permutations, semidirect_product, ActionSpec,
    ElementId, GroupTable, PermGenerators,
};
use crate::numbers::{as_prime_power, is_prime, prime_factors};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(u64),
    Abelian(Vec<u64>),
    Dihedral(u64),
    Quaternion(u64),
    Symmetric(u64),
    HeisenbergModP(u64),
    ModularP3(u64),
    SaundersLike { p: u64, m: u64 },
    Product(Vec<GroupSpec>),
    FromFile(PathBuf),
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::Abelian(parts) => {
                let parts: Vec<String> = parts.iter().map(u64::to_string).collect();
                write!(f, "ab:{}", parts.join(","))
            }
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
            GroupSpec::Quaternion(n) => write!(f, "Q{n}"),
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::HeisenbergModP(p) => write!(f, "heis:{p}"),
            GroupSpec::ModularP3(p) => write!(f, "modp3:{p}"),
            GroupSpec::SaundersLike { p, m } => write!(f, "saunders:{p}:{m}"),
            GroupSpec::Product(factors) => {
                for (i, factor) in factors.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" x ")?;
                    }
                    write!(f, "{factor}")?;
                }
                Ok(())
            }
            GroupSpec::FromFile(path) => write!(f, "file:{}", path.display()),
        }
    }
}

impl std::str::FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_group_spec(s)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let rest = self.rest();
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(Error::parse(start, "expected a number"));
        }
        self.pos += digits;
        self.src[start..self.pos]
            .parse()
            .map_err(|_| Error::parse(start, "number too large"))
    }

    fn positive(&mut self) -> Result<u64> {
        let start = self.pos;
        let n = self.number()?;
        if n == 0 {
            return Err(Error::parse(start, "expected a positive number"));
        }
        Ok(n)
    }

    fn factor(&mut self) -> Result<GroupSpec> {
        self.skip_ws();
        let start = self.pos;
        if self.eat("heis:") {
            return Ok(GroupSpec::HeisenbergModP(self.positive()?));
        }
        if self.eat("modp3:") {
            return Ok(GroupSpec::ModularP3(self.positive()?));
        }
        if self.eat("saunders") {
            let mut spec = (3, 2);
            if self.eat(":") {
                spec.0 = self.positive()?;
                if self.eat(":") {
                    spec.1 = self.positive()?;
                }
            }
            return Ok(GroupSpec::SaundersLike { p: spec.0, m: spec.1 });
        }
        if self.eat("ab:") {
            let mut parts = vec![self.positive()?];
            while self.eat(",") {
                parts.push(self.positive()?);
            }
            return Ok(GroupSpec::Abelian(parts));
        }
        if self.eat("file:") {
            let rest = self.rest();
            let end = rest.find(" x ").unwrap_or(rest.len());
            let path = rest[..end].trim();
            if path.is_empty() {
                return Err(Error::parse(self.pos, "expected a path"));
            }
            self.pos += end;
            return Ok(GroupSpec::FromFile(PathBuf::from(path)));
        }
        for (letter, make) in [
            ("C", GroupSpec::Cyclic as fn(u64) -> GroupSpec),
            ("D", GroupSpec::Dihedral),
            ("Q", GroupSpec::Quaternion),
            ("S", GroupSpec::Symmetric),
        ] {
            if self.eat(letter) {
                return Ok(make(self.positive()?));
            }
        }
        Err(Error::parse(start, "expected a group name"))
    }
}

/// Parses a group spec string; see the module docs for the grammar.
pub fn parse_group_spec(s: &str) -> Result<GroupSpec> {
    let mut parser = Parser { src: s, pos: 0 };
    let mut factors = vec![parser.factor()?];
    loop {
        parser.skip_ws();
        if parser.rest().is_empty() {
            break;
        }
        if !(parser.eat("x") || parser.eat("×")) {
            return Err(Error::parse(parser.pos, "expected 'x' or end of input"));
        }
        factors.push(parser.factor()?);
    }
    Ok(if factors.len() == 1 {
        factors.pop().unwrap()
    } else {
        GroupSpec::Product(factors)
    })
}

impl GroupSpec {
    /// The order of the group, when it is known without reading a file.
    pub fn order(&self) -> Option<u128> {
        Some(match self {
            GroupSpec::Cyclic(n) => *n as u128,
            GroupSpec::Abelian(parts) => parts.iter().fold(1u128, |acc, &n| acc.saturating_mul(n as u128)),
            GroupSpec::Dihedral(n) => 2 * *n as u128,
            GroupSpec::Quaternion(n) => *n as u128,
            GroupSpec::Symmetric(n) => (1..=(*n).min(40) as u128).fold(1u128, |acc, k| acc.saturating_mul(k)),
            GroupSpec::HeisenbergModP(p) | GroupSpec::ModularP3(p) => (*p as u128).saturating_pow(3),
            GroupSpec::SaundersLike { p, m } => (*p as u128).saturating_pow(2).saturating_mul(*m as u128),
            GroupSpec::Product(factors) => {
                let mut acc: u128 = 1;
                for f in factors {
                    acc = acc.saturating_mul(f.order()?);
                }
                acc
            }
            GroupSpec::FromFile(_) => return None,
        })
    }

    fn check_parameters(&self) -> Result<()> {
        let need_odd_prime = |p: u64, what: &str| -> Result<()> {
            if p == 2 {
                return Err(Error::UnsupportedParameter(format!("{what} needs an odd prime, got 2")));
            }
            if !is_prime(p) {
                return Err(Error::ParameterOutOfRange(format!("{what} needs a prime, got {p}")));
            }
            Ok(())
        };
        match self {
            GroupSpec::Abelian(parts) => {
                if let Some(&bad) = parts.iter().find(|&&n| as_prime_power(n).is_none()) {
                    return Err(Error::ParameterOutOfRange(format!(
                        "abelian factors must be prime powers, got {bad}"
                    )));
                }
            }
            GroupSpec::Quaternion(n) => {
                if *n != 8 && *n != 16 {
                    return Err(Error::UnsupportedParameter(format!(
                        "quaternion groups of order 8 and 16 only, got {n}"
                    )));
                }
            }
            GroupSpec::HeisenbergModP(p) => need_odd_prime(*p, "heis")?,
            GroupSpec::ModularP3(p) => need_odd_prime(*p, "modp3")?,
            GroupSpec::SaundersLike { p, m } => {
                if !is_prime(*p) {
                    return Err(Error::ParameterOutOfRange(format!("saunders needs a prime, got {p}")));
                }
                if (*p - 1) % *m != 0 {
                    return Err(Error::ParameterOutOfRange(format!("{m} does not divide {p} - 1")));
                }
            }
            GroupSpec::Product(factors) => {
                for f in factors {
                    f.check_parameters()?;
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// Builds the group; its label is the canonical spelling of the spec.
    pub fn build(&self, caps: &Caps) -> Result<GroupTable> {
        self.check_parameters()?;
        if let Some(order) = self.order() {
            if order > caps.order as u128 {
                return Err(Error::OrderCapExceeded {
                    order: order.min(usize::MAX as u128) as usize,
                    cap: caps.order,
                });
            }
        }
        let label = self.to_string();
        let group = match self {
            GroupSpec::Cyclic(n) => cyclic(*n as usize),
            GroupSpec::Abelian(parts) => {
                let mut acc = cyclic(1);
                for &n in parts {
                    acc = direct_product(&acc, &cyclic(n as usize), caps)?;
                }
                acc
            }
            GroupSpec::Dihedral(n) => dihedral(*n as usize, caps)?,
            GroupSpec::Quaternion(n) => quaternion(*n as usize),
            GroupSpec::Symmetric(n) => symmetric(*n as usize, caps)?,
            GroupSpec::HeisenbergModP(p) => heisenberg(*p as usize),
            GroupSpec::ModularP3(p) => modular_p3(*p as usize, caps)?,
            GroupSpec::SaundersLike { p, m } => saunders(*p, *m, caps)?,
            GroupSpec::Product(factors) => {
                let mut acc = factors[0].build(caps)?;
                for f in &factors[1..] {
                    acc = direct_product(&acc, &f.build(caps)?, caps)?;
                }
                acc
            }
            GroupSpec::FromFile(path) => {
                let text = std::fs::read_to_string(path)?;
                group_from_cayley_text(&text, &label, caps)?
            }
        };
        Ok(group.with_label(label))
    }
}

fn table(n: usize, f: impl Fn(usize, usize) -> usize, label: &str) -> GroupTable {
    let mut mul = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            mul.push(f(a, b) as ElementId);
        }
    }
    GroupTable::from_trusted(n, mul, label)
}

pub fn cyclic(n: usize) -> GroupTable {
    table(n, |a, b| (a + b) % n, &format!("C{n}"))
}

/// Dihedral group of order `2n`: `C_n` extended by inversion.
pub fn dihedral(n: usize, caps: &Caps) -> Result<GroupTable> {
    let rotations = cyclic(n);
    let flip = cyclic(2);
    let action = ActionSpec {
        images: vec![
            (0..n as ElementId).collect(),
            (0..n).map(|x| ((n - x) % n) as ElementId).collect(),
        ],
    };
    semidirect_product(&rotations, &flip, &action, caps)
}

/// Quaternion group of order `n = 2m`: elements `a^i b^j` at id `2i + j` with
/// `a^m = 1`, `b² = a^(m/2)`, `b a b⁻¹ = a⁻¹`.
pub fn quaternion(n: usize) -> GroupTable {
    let m = n / 2;
    table(
        n,
        |x, y| {
            let (i, j, k, l) = (x / 2, x % 2, y / 2, y % 2);
            let k = if j == 1 { (m - k) % m } else { k };
            let mut e = (i + k) % m;
            if j + l == 2 {
                e = (e + m / 2) % m;
            }
            2 * e + (j + l) % 2
        },
        &format!("Q{n}"),
    )
}

pub fn symmetric(n: usize, caps: &Caps) -> Result<GroupTable> {
    let label = format!("S{n}");
    if n <= 1 {
        return Ok(cyclic(1).with_label(label));
    }
    let transposition: Vec<u32> = (0..n as u32).map(|i| if i < 2 { 1 - i } else { i }).collect();
    let rotation: Vec<u32> = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
    group_from_permutations(&PermGenerators::new(n, vec![transposition, rotation]), &label, caps)
}

/// Upper unitriangular matrices `[[1, a, c], [0, 1, b], [0, 0, 1]]` over
/// `F_p`, with `(a, b, c)` at id `a·p² + b·p + c`.
pub fn heisenberg(p: usize) -> GroupTable {
    let split = |x: usize| (x / (p * p), (x / p) % p, x % p);
    table(
        p * p * p,
        |x, y| {
            let ((a, b, c), (d, e, f)) = (split(x), split(y));
            ((a + d) % p) * p * p + ((b + e) % p) * p + (c + f + a * e) % p
        },
        &format!("heis:{p}"),
    )
}

/// `C_{p²} ⋊ C_p` with the generator of `C_p` acting by `x ↦ (1+p)x`.
pub fn modular_p3(p: usize, caps: &Caps) -> Result<GroupTable> {
    let n = p * p;
    let images = (0..p)
        .map(|j| {
            let unit = (0..j).fold(1, |acc, _| acc * (1 + p) % n);
            (0..n).map(|x| (x * unit % n) as ElementId).collect()
        })
        .collect();
    semidirect_product(&cyclic(n), &cyclic(p), &ActionSpec { images }, caps)
}

/// Smallest element of multiplicative order `m` modulo the prime `p`.
fn unit_of_order(p: u64, m: u64) -> u64 {
    let order = |w: u64| {
        let (mut x, mut k) = (w, 1);
        while x != 1 {
            x = x * w % p;
            k += 1;
        }
        k
    };
    (1..p).find(|&w| order(w) == m).expect("m divides p - 1")
}

/// `F_p² ⋊ C_m`, the generator of `C_m` fixing the first coordinate and
/// scaling the second by a unit of order `m`. Both coordinate axes are
/// minimal normal subgroups, and a diagonal line `W` has
/// `RC(W·V₁) = F_p² ≠ RC(W)·V₁ = V₁` when `m > 1`.
pub fn saunders(p: u64, m: u64, caps: &Caps) -> Result<GroupTable> {
    let pu = p as usize;
    let plane = direct_product(&cyclic(pu), &cyclic(pu), caps)?;
    let w = unit_of_order(p, m);
    let images = (0..m)
        .map(|j| {
            let scale = (0..j).fold(1, |acc, _| acc * w % p) as usize;
            (0..pu * pu)
                .map(|x| ((x / pu) * pu + (x % pu) * scale % pu) as ElementId)
                .collect()
        })
        .collect();
    semidirect_product(&plane, &cyclic(m as usize), &ActionSpec { images }, caps)
}

/// The two groups of order `p²`.
pub fn order_p2_specs(p: u64) -> Result<Vec<GroupSpec>> {
    if !is_prime(p) {
        return Err(Error::ParameterOutOfRange(format!("{p} is not prime")));
    }
    Ok(vec![GroupSpec::Cyclic(p * p), GroupSpec::Abelian(vec![p, p])])
}

/// The five groups of order `p³` for an odd prime `p`: cyclic, elementary
/// abelian, `C_{p²} × C_p`, and the two nonabelian ones.
pub fn order_p3_specs(p: u64) -> Result<Vec<GroupSpec>> {
    if p == 2 || !is_prime(p) {
        return Err(Error::ParameterOutOfRange(format!(
            "the order p³ family needs an odd prime, got {p}; use the order 8 family for p = 2"
        )));
    }
    Ok(vec![
        GroupSpec::Cyclic(p * p * p),
        GroupSpec::Abelian(vec![p, p, p]),
        GroupSpec::Abelian(vec![p * p, p]),
        GroupSpec::HeisenbergModP(p),
        GroupSpec::ModularP3(p),
    ])
}

pub fn order_p3_family(p: u64, caps: &Caps) -> Result<Vec<GroupTable>> {
    order_p3_specs(p)?.iter().map(|s| s.build(caps)).collect()
}

pub fn order_8_specs() -> Vec<GroupSpec> {
    vec![
        GroupSpec::Cyclic(8),
        GroupSpec::Abelian(vec![2, 2, 2]),
        GroupSpec::Abelian(vec![4, 2]),
        GroupSpec::Dihedral(4),
        GroupSpec::Quaternion(8),
    ]
}

pub fn order_8_family(caps: &Caps) -> Result<Vec<GroupTable>> {
    order_8_specs().iter().map(|s| s.build(caps)).collect()
}

fn partitions(n: u32, largest: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=largest.min(n)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// The abelian groups of order `p^k`, one per partition of `k`, largest
/// cyclic factor first.
pub fn abelian_p_groups(p: u64, k: u32) -> Vec<GroupSpec> {
    partitions(k, k)
        .into_iter()
        .map(|parts| GroupSpec::Abelian(parts.into_iter().map(|e| p.pow(e)).collect()))
        .collect()
}

/// Every abelian group of order `n`, as products of prime-power cyclic groups.
pub fn abelian_groups_of_order(n: u64) -> Vec<GroupSpec> {
    let mut out: Vec<Vec<u64>> = vec![Vec::new()];
    for (p, a) in prime_factors(n) {
        let mut next = Vec::new();
        for prefix in &out {
            for parts in partitions(a, a) {
                let mut v = prefix.clone();
                v.extend(parts.into_iter().map(|e| p.pow(e)));
                next.push(v);
            }
        }
        out = next;
    }
    out.into_iter()
        .map(|parts| if parts.is_empty() { GroupSpec::Cyclic(1) } else { GroupSpec::Abelian(parts) })
        .collect()
}

/// Cheap isomorphism invariants: abelian flag, exponent, center order and
/// the number of elements of each order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub order: usize,
    pub abelian: bool,
    pub exponent: u64,
    pub center_order: usize,
    pub order_counts: Vec<(u32, usize)>,
}

pub fn fingerprint(g: &GroupTable) -> Fingerprint {
    let mut counts = std::collections::BTreeMap::new();
    for &o in g.element_orders() {
        *counts.entry(o).or_insert(0usize) += 1;
    }
    let exponent = g
        .element_orders()
        .iter()
        .fold(1u64, |acc, &o| num_integer::lcm(acc, o as u64));
    Fingerprint {
        order: g.order(),
        abelian: g.is_abelian(),
        exponent,
        center_order: center(g).order(),
        order_counts: counts.into_iter().collect(),
    }
}

/// Odd-order nilpotent groups up to the given order: all abelian groups of
/// odd order, the nonabelian groups of order p³, and their products with
/// small cyclic and elementary abelian groups.
pub fn odd_nilpotent_battery(max_order: u64) -> Vec<GroupSpec> {
    let mut out: Vec<GroupSpec> = (1..=max_order)
        .step_by(2)
        .flat_map(abelian_groups_of_order)
        .collect();
    for p in [3u64, 5, 7] {
        for base in [GroupSpec::HeisenbergModP(p), GroupSpec::ModularP3(p)] {
            let base_order = p * p * p;
            if base_order > max_order {
                continue;
            }
            out.push(base.clone());
            for extra in (3..=max_order / base_order).step_by(2) {
                for ab in abelian_groups_of_order(extra) {
                    out.push(GroupSpec::Product(vec![base.clone(), ab]));
                }
            }
        }
    }
    out
}

/// Socle friendly groups used to compare the greedy construction with the
/// exact search: every abelian group of order at most `max_order`, the
/// order 8 and order 27 families, and a few small non-nilpotent groups.
pub fn socle_friendly_battery(max_order: u64) -> Vec<GroupSpec> {
    let mut out: Vec<GroupSpec> = (1..=max_order).flat_map(abelian_groups_of_order).collect();
    out.extend(order_8_specs().into_iter().filter(|s| !matches!(s, GroupSpec::Cyclic(_) | GroupSpec::Abelian(_))));
    out.extend([GroupSpec::HeisenbergModP(3), GroupSpec::ModularP3(3)]);
    out.extend([
        GroupSpec::Symmetric(3),
        GroupSpec::Dihedral(4),
        GroupSpec::Dihedral(5),
        GroupSpec::Dihedral(6),
        GroupSpec::Quaternion(16),
        GroupSpec::Symmetric(4),
    ]);
    out
}

/// Groups of order at most 24 for checking the exact search against plain
/// subset enumeration.
pub fn small_battery() -> Vec<GroupSpec> {
    let mut out: Vec<GroupSpec> = (1..=24).flat_map(abelian_groups_of_order).collect();
    for n in 2..=12 {
        out.push(GroupSpec::Dihedral(n));
    }
    out.extend([
        GroupSpec::Quaternion(8),
        GroupSpec::Quaternion(16),
        GroupSpec::Symmetric(3),
        GroupSpec::Symmetric(4),
        GroupSpec::SaundersLike { p: 3, m: 2 },
        GroupSpec::Product(vec![GroupSpec::Cyclic(3), GroupSpec::Symmetric(3)]),
        GroupSpec::Product(vec![GroupSpec::Cyclic(2), GroupSpec::Quaternion(8)]),
        GroupSpec::Product(vec![GroupSpec::Cyclic(2), GroupSpec::Dihedral(4)]),
        GroupSpec::Product(vec![GroupSpec::Cyclic(4), GroupSpec::Symmetric(3)]),
        GroupSpec::Product(vec![GroupSpec::Abelian(vec![2, 2]), GroupSpec::Symmetric(3)]),
        GroupSpec::Product(vec![GroupSpec::Cyclic(3), GroupSpec::Quaternion(8)]),
        GroupSpec::Product(vec![GroupSpec::Cyclic(3), GroupSpec::Dihedral(4)]),
        GroupSpec::Product(vec![GroupSpec::Cyclic(2), GroupSpec::Dihedral(6)]),
    ]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::is_nilpotent;
    use proptest::prelude::*;

    fn build(s: &str) -> GroupTable {
        parse_group_spec(s).unwrap().build(&Caps::default()).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse_group_spec("C12").unwrap(), GroupSpec::Cyclic(12));
        assert_eq!(
            parse_group_spec("C2 x C2").unwrap(),
            GroupSpec::Product(vec![GroupSpec::Cyclic(2), GroupSpec::Cyclic(2)])
        );
        assert_eq!(parse_group_spec("heis:5").unwrap(), GroupSpec::HeisenbergModP(5));
        assert_eq!(parse_group_spec(" C 2x  D 4 ").unwrap(), parse_group_spec("C2 x D4").unwrap());
        assert_eq!(parse_group_spec("saunders").unwrap(), GroupSpec::SaundersLike { p: 3, m: 2 });
        assert_eq!(parse_group_spec("saunders:7").unwrap(), GroupSpec::SaundersLike { p: 7, m: 2 });
        assert_eq!(parse_group_spec("ab:9, 3").unwrap(), GroupSpec::Abelian(vec![9, 3]));
        assert_eq!(
            parse_group_spec("file:/tmp/a b.txt x C2").unwrap(),
            GroupSpec::Product(vec![GroupSpec::FromFile("/tmp/a b.txt".into()), GroupSpec::Cyclic(2)])
        );
    }

    #[test]
    fn parse_errors_report_positions() {
        for (input, pos) in [("", 0), ("C", 1), ("C2 x", 4), ("C2 y C3", 3), ("Z5", 0), ("C0", 1), ("ab:4,", 5)] {
            match parse_group_spec(input) {
                Err(Error::Parse { pos: p, .. }) => assert_eq!(p, pos, "{input:?}"),
                other => panic!("{input:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn parameter_errors() {
        let caps = Caps::default();
        let err = |s: &str| parse_group_spec(s).unwrap().build(&caps).unwrap_err();
        assert!(matches!(err("heis:2"), Error::UnsupportedParameter(_)));
        assert!(matches!(err("modp3:2"), Error::UnsupportedParameter(_)));
        assert!(matches!(err("heis:9"), Error::ParameterOutOfRange(_)));
        assert!(matches!(err("Q32"), Error::UnsupportedParameter(_)));
        assert!(matches!(err("ab:6"), Error::ParameterOutOfRange(_)));
        assert!(matches!(err("saunders:7:4"), Error::ParameterOutOfRange(_)));
        assert!(matches!(err("C5000"), Error::OrderCapExceeded { order: 5000, .. }));
        assert!(matches!(err("C64 x C64 x C64"), Error::OrderCapExceeded { .. }));
        assert!(order_p3_specs(2).is_err());
        assert!(order_p3_specs(9).is_err());
    }

    #[test]
    fn constructions_are_groups() {
        for s in [
            "C1", "C12", "D1", "D4", "D5", "Q8", "Q16", "S3", "S4", "heis:3", "modp3:3", "heis:5", "modp3:5",
            "saunders", "saunders:7:3", "ab:4,2,3", "C3 x S3",
        ] {
            let g = build(s);
            g.validate_full().unwrap_or_else(|e| panic!("{s}: {e}"));
            assert_eq!(g.order() as u128, parse_group_spec(s).unwrap().order().unwrap(), "{s}");
            assert_eq!(g.label(), parse_group_spec(s).unwrap().to_string());
        }
    }

    #[test]
    fn order_p3_families_are_distinct() {
        let caps = Caps::default();
        for p in [3, 5] {
            let groups = order_p3_family(p, &caps).unwrap();
            let prints: std::collections::BTreeSet<Fingerprint> = groups.iter().map(fingerprint).collect();
            assert_eq!(prints.len(), 5);
            for g in &groups[3..] {
                assert!(!g.is_abelian());
                assert_eq!(center(g).order() as u64, p);
                assert!(is_nilpotent(g));
            }
            // the Heisenberg group has exponent p, the other one p²
            assert_eq!(fingerprint(&groups[3]).exponent, p);
            assert_eq!(fingerprint(&groups[4]).exponent, p * p);
        }
        let prints: std::collections::BTreeSet<Fingerprint> =
            order_8_family(&caps).unwrap().iter().map(fingerprint).collect();
        assert_eq!(prints.len(), 5);
    }

    #[test]
    fn saunders_shape() {
        let g = build("saunders");
        assert_eq!(g.order(), 18);
        assert!(!g.is_abelian());
        assert_eq!(center(&g).order(), 3);
    }

    #[test]
    fn abelian_counts() {
        // numbers of partitions
        assert_eq!(abelian_p_groups(3, 4).len(), 5);
        assert_eq!(abelian_groups_of_order(1), vec![GroupSpec::Cyclic(1)]);
        assert_eq!(abelian_groups_of_order(72).len(), 6);
        assert_eq!(abelian_groups_of_order(128).len(), 15);
        assert_eq!(abelian_groups_of_order(30).len(), 1);
    }

    fn arb_factor() -> impl Strategy<Value = GroupSpec> {
        prop_oneof![
            (1u64..500).prop_map(GroupSpec::Cyclic),
            (1u64..50).prop_map(GroupSpec::Dihedral),
            prop::sample::select(vec![8u64, 16]).prop_map(GroupSpec::Quaternion),
            (1u64..6).prop_map(GroupSpec::Symmetric),
            (2u64..50).prop_map(GroupSpec::HeisenbergModP),
            (2u64..50).prop_map(GroupSpec::ModularP3),
            ((2u64..20), (1u64..5)).prop_map(|(p, m)| GroupSpec::SaundersLike { p, m }),
            prop::collection::vec(1u64..100, 1..4).prop_map(GroupSpec::Abelian),
            "[a-z/._]{1,12}".prop_map(|s| GroupSpec::FromFile(s.into())),
        ]
    }

    proptest! {
        #[test]
        fn display_round_trips(factors in prop::collection::vec(arb_factor(), 1..4)) {
            let spec = if factors.len() == 1 { factors[0].clone() } else { GroupSpec::Product(factors) };
            prop_assert_eq!(parse_group_spec(&spec.to_string()).unwrap(), spec);
        }
    }
}
