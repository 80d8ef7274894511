use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Exponent vector of a monomial in a fixed list of generators.
///
/// Ordered graded-lexicographically with the *last* generator most
/// significant, so `y1 < y2 < … < ym` and `y_j^k` beats every monomial of the
/// same degree that has a smaller exponent of `y_j` and no higher generator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u8>,
}

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial {
            exps: vec![0; arity],
        }
    }

    pub fn var(arity: usize, i: usize) -> Self {
        Self::var_pow(arity, i, 1)
    }

    pub fn var_pow(arity: usize, i: usize, e: u8) -> Self {
        let mut m = Self::one(arity);
        m.exps[i] = e;
        m
    }

    pub fn from_exponents(exps: Vec<u8>) -> Self {
        Monomial { exps }
    }

    pub fn exponents(&self) -> &[u8] {
        &self.exps
    }

    pub fn arity(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    /// Degree with per-generator weights.
    pub fn weighted_degree(&self, weights: &[usize]) -> usize {
        self.exps
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as usize * w)
            .sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.arity(), other.arity());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| {
                    a.checked_add(b)
                        .expect("monomial exponent exceeds 255")
                })
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect(),
        }
    }

    pub fn render(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    names[i].clone()
                } else {
                    format!("{}^{}", names[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.iter().rev().cmp(other.exps.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(&default_names("y", self.arity())))
    }
}

/// `["y1", "y2", …]`.
pub fn default_names(prefix: &str, arity: usize) -> Vec<String> {
    (1..=arity).map(|i| format!("{prefix}{i}")).collect()
}

/// A polynomial over GF(2): a set of monomials, each with coefficient 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GF2Poly {
    arity: usize,
    support: BTreeSet<Monomial>,
}

impl GF2Poly {
    pub fn zero(arity: usize) -> Self {
        GF2Poly {
            arity,
            support: BTreeSet::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Self::monomial(Monomial::one(arity))
    }

    pub fn var(arity: usize, i: usize) -> Self {
        Self::monomial(Monomial::var(arity, i))
    }

    pub fn monomial(m: Monomial) -> Self {
        let arity = m.arity();
        let mut support = BTreeSet::new();
        support.insert(m);
        GF2Poly { arity, support }
    }

    pub fn from_monomials<I: IntoIterator<Item = Monomial>>(arity: usize, terms: I) -> Self {
        let mut p = Self::zero(arity);
        for m in terms {
            p.toggle(m);
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = &Monomial> {
        self.support.iter()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.support.contains(m)
    }

    /// Adds a single monomial (XOR semantics).
    pub fn toggle(&mut self, m: Monomial) {
        debug_assert_eq!(m.arity(), self.arity);
        if !self.support.remove(&m) {
            self.support.insert(m);
        }
    }

    pub fn leading(&self) -> Option<&Monomial> {
        self.support.last()
    }

    pub fn pop_leading(&mut self) -> Option<Monomial> {
        self.support.pop_last()
    }

    pub fn degree(&self) -> Option<usize> {
        self.support.iter().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.support.iter().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn homogeneous_part(&self, degree: usize) -> GF2Poly {
        GF2Poly {
            arity: self.arity,
            support: self
                .support
                .iter()
                .filter(|m| m.degree() == degree)
                .cloned()
                .collect(),
        }
    }

    fn check_arity(&self, other: &GF2Poly) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: other.arity,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &GF2Poly) -> Result<GF2Poly> {
        self.check_arity(other)?;
        Ok(GF2Poly {
            arity: self.arity,
            support: self
                .support
                .symmetric_difference(&other.support)
                .cloned()
                .collect(),
        })
    }

    pub fn add_assign(&mut self, other: &GF2Poly) {
        debug_assert_eq!(self.arity, other.arity);
        for m in &other.support {
            self.toggle(m.clone());
        }
    }

    pub fn mul(&self, other: &GF2Poly) -> Result<GF2Poly> {
        self.check_arity(other)?;
        let mut out = GF2Poly::zero(self.arity);
        for a in &self.support {
            for b in &other.support {
                out.toggle(a.mul(b));
            }
        }
        Ok(out)
    }

    pub fn mul_monomial(&self, m: &Monomial) -> GF2Poly {
        GF2Poly {
            arity: self.arity,
            support: self.support.iter().map(|a| a.mul(m)).collect(),
        }
    }

    pub fn pow(&self, e: usize) -> GF2Poly {
        let mut out = GF2Poly::one(self.arity);
        for _ in 0..e {
            out = out.mul(self).expect("same arity");
        }
        out
    }

    /// Canonical rendering, leading term first: `"y1^2*y3 + y2"`.
    pub fn render(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.support
            .iter()
            .rev()
            .map(|m| m.render(names))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    /// Parses the grammar produced by [`GF2Poly::render`].
    pub fn parse(text: &str, names: &[String]) -> Result<GF2Poly> {
        let arity = names.len();
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut poly = GF2Poly::zero(arity);
        for term in text.split('+') {
            let term = term.trim();
            if term == "0" {
                continue;
            }
            let mut m = Monomial::one(arity);
            if term != "1" {
                for factor in term.split('*') {
                    let factor = factor.trim();
                    let (name, exp) = match factor.split_once('^') {
                        Some((n, e)) => (
                            n.trim(),
                            e.trim()
                                .parse::<u8>()
                                .map_err(|_| Error::Parse(format!("bad exponent in '{factor}'")))?,
                        ),
                        None => (factor, 1),
                    };
                    let idx = names
                        .iter()
                        .position(|n| n == name)
                        .ok_or_else(|| Error::Parse(format!("unknown generator '{name}'")))?;
                    m.exps[idx] = m.exps[idx]
                        .checked_add(exp)
                        .ok_or_else(|| Error::Parse("exponent overflow".into()))?;
                }
            }
            poly.toggle(m);
        }
        Ok(poly)
    }
}

impl fmt::Debug for GF2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(&default_names("y", self.arity)))
    }
}

/// All monomials of the given degree in `arity` generators.
pub fn monomials_of_degree(arity: usize, degree: usize) -> Vec<Monomial> {
    fn rec(arity: usize, pos: usize, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Monomial>) {
        if pos + 1 == arity {
            cur[pos] = left as u8;
            out.push(Monomial::from_exponents(cur.clone()));
            cur[pos] = 0;
            return;
        }
        for e in 0..=left {
            cur[pos] = e as u8;
            rec(arity, pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    if arity == 0 {
        if degree == 0 {
            out.push(Monomial::one(0));
        }
        return out;
    }
    rec(arity, 0, degree, &mut vec![0; arity], &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(k: usize) -> Vec<String> {
        default_names("y", k)
    }

    fn p(s: &str, k: usize) -> GF2Poly {
        GF2Poly::parse(s, &names(k)).unwrap()
    }

    #[test]
    fn frobenius_square() {
        let x_plus_y = p("y1 + y2", 2);
        assert_eq!(x_plus_y.mul(&x_plus_y).unwrap(), p("y1^2 + y2^2", 2));
    }

    #[test]
    fn times_zero_is_zero() {
        let a = p("y1*y2 + y1 + 1", 2);
        assert!(a.mul(&GF2Poly::zero(2)).unwrap().is_zero());
    }

    #[test]
    fn expansion() {
        let a = p("y1 + y2", 2);
        let b = p("y2", 2);
        assert_eq!(a.mul(&b).unwrap(), p("y1*y2 + y2^2", 2));
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        assert!(matches!(
            p("y1", 1).mul(&p("y1", 2)),
            Err(Error::ArityMismatch { left: 1, right: 2 })
        ));
    }

    #[test]
    fn canonical_rendering() {
        let q = p("y2 + y3*y1^2", 3);
        assert_eq!(q.render(&names(3)), "y1^2*y3 + y2");
        assert_eq!(GF2Poly::zero(3).render(&names(3)), "0");
        assert_eq!(GF2Poly::one(3).render(&names(3)), "1");
    }

    #[test]
    fn order_makes_last_generator_dominant() {
        let a = Monomial::from_exponents(vec![2, 0]);
        let b = Monomial::from_exponents(vec![1, 1]);
        let c = Monomial::from_exponents(vec![0, 2]);
        assert!(a < b && b < c);
        assert!(Monomial::from_exponents(vec![5, 0]) > c);
    }

    #[test]
    fn monomial_enumeration_counts() {
        // C(arity + d - 1, d)
        assert_eq!(monomials_of_degree(3, 4).len(), 15);
        assert_eq!(monomials_of_degree(8, 8).len(), 6435);
        assert_eq!(monomials_of_degree(1, 0).len(), 1);
    }

    #[test]
    fn parse_rejects_unknown_names() {
        assert!(GF2Poly::parse("z1", &names(2)).is_err());
        assert!(GF2Poly::parse("y1^x", &names(2)).is_err());
    }
}
