//! Sparse multivariate polynomials over the exact rationals.
//!
//! Membership in the structured element sets (endomorphic-left, idempotent,
//! cube-zero, ...) is a polynomial condition on the coordinates of a generic
//! element. These polynomials are what the set solver consumes. Terms live
//! in a `BTreeMap` keyed by exponent vectors, so iteration order — and hence
//! every downstream description — is deterministic.

use num::{BigRational, One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

use crate::poly::Poly;
use crate::scalar::render_rational;

/// Exponent vector; `mono[i]` is the power of variable `i`.
pub type Mono = Vec<u32>;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Mono, BigRational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = MPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        MPoly::constant(nvars, BigRational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut mono = vec![0; nvars];
        mono[i] = 1;
        let mut p = MPoly::zero(nvars);
        p.terms.insert(mono, BigRational::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.iter().all(|&e| e == 0))
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        if self.is_constant() {
            Some(
                self.terms
                    .get(&vec![0; self.nvars])
                    .cloned()
                    .unwrap_or_else(BigRational::zero),
            )
        } else {
            None
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().sum())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m[var]).max().unwrap_or(0)
    }

    /// Indices of variables that actually occur.
    pub fn vars_present(&self) -> Vec<usize> {
        let mut present = vec![false; self.nvars];
        for m in self.terms.keys() {
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    present[i] = true;
                }
            }
        }
        (0..self.nvars).filter(|&i| present[i]).collect()
    }

    fn insert_term(&mut self, mono: Mono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = e.get() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = MPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let mono: Mono = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                out.insert_term(mono, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> MPoly {
        let mut base = self.clone();
        let mut acc = MPoly::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.iter().enumerate() {
                for _ in 0..e {
                    term *= &point[i];
                }
            }
            acc += term;
        }
        acc
    }

    /// Evaluates with univariate polynomials as coordinates, producing a
    /// univariate polynomial (used to check identities along a family).
    pub fn eval_poly(&self, assignment: &[Poly]) -> Poly {
        assert_eq!(assignment.len(), self.nvars);
        let mut acc = Poly::zero();
        for (m, c) in &self.terms {
            let mut term = Poly::constant(c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&assignment[i].pow(e));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Full composition: substitutes a polynomial for every variable at once.
    pub fn eval_mpoly(&self, assignment: &[MPoly]) -> MPoly {
        assert_eq!(assignment.len(), self.nvars);
        let out_vars = assignment
            .first()
            .map(MPoly::nvars)
            .unwrap_or(self.nvars);
        let mut acc = MPoly::zero(out_vars);
        for (m, c) in &self.terms {
            let mut term = MPoly::constant(out_vars, c.clone());
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&assignment[i].pow(e));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Substitutes `replacement` for variable `var` (same variable space).
    pub fn substitute(&self, var: usize, replacement: &MPoly) -> MPoly {
        assert_eq!(self.nvars, replacement.nvars);
        let mut out = MPoly::zero(self.nvars);
        // group terms by power of `var`, then use Horner on the groups
        let max_e = self.degree_in(var);
        let mut by_power: Vec<MPoly> = vec![MPoly::zero(self.nvars); max_e as usize + 1];
        for (m, c) in &self.terms {
            let e = m[var] as usize;
            let mut rest = m.clone();
            rest[var] = 0;
            by_power[e].insert_term(rest, c.clone());
        }
        for coeff in by_power.into_iter().rev() {
            out = out.mul(replacement).add(&coeff);
        }
        out
    }

    /// Views the polynomial as univariate in `var`: coefficient list
    /// low-degree-first, each coefficient free of `var`.
    pub fn coeffs_in(&self, var: usize) -> Vec<MPoly> {
        let max_e = self.degree_in(var);
        let mut by_power: Vec<MPoly> = vec![MPoly::zero(self.nvars); max_e as usize + 1];
        for (m, c) in &self.terms {
            let e = m[var] as usize;
            let mut rest = m.clone();
            rest[var] = 0;
            by_power[e].insert_term(rest, c.clone());
        }
        by_power
    }

    /// If at most one variable occurs, converts to a univariate [`Poly`]
    /// (in that variable), returning the variable index (`None` when the
    /// polynomial is constant).
    pub fn as_univariate(&self) -> Option<(Option<usize>, Poly)> {
        let present = self.vars_present();
        match present.len() {
            0 => Some((
                None,
                Poly::constant(self.constant_value().unwrap_or_else(BigRational::zero)),
            )),
            1 => {
                let v = present[0];
                let coeffs = self
                    .coeffs_in(v)
                    .into_iter()
                    .map(|c| c.constant_value().expect("only one variable present"))
                    .collect();
                Some((Some(v), Poly::new(coeffs)))
            }
            _ => None,
        }
    }

    /// The largest monomial dividing every term, e.g. `x*y^2` from
    /// `x^2 y^2 + x y^3`. Zero polynomial gives the empty monomial.
    pub fn common_monomial(&self) -> Mono {
        let mut common: Option<Mono> = None;
        for m in self.terms.keys() {
            common = Some(match common {
                None => m.clone(),
                Some(c) => c.iter().zip(m).map(|(a, b)| *a.min(b)).collect(),
            });
        }
        common.unwrap_or_else(|| vec![0; self.nvars])
    }

    /// Divides out a monomial that divides every term.
    pub fn divide_monomial(&self, mono: &Mono) -> MPoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let reduced: Mono = m
                    .iter()
                    .zip(mono)
                    .map(|(a, b)| a.checked_sub(*b).expect("monomial divides all terms"))
                    .collect();
                (reduced, c.clone())
            })
            .collect();
        MPoly { nvars: self.nvars, terms }
    }

    /// Normalizes sign/scale: divides by the coefficient of the leading
    /// (largest) monomial, making it one. Zero stays zero.
    pub fn normalized(&self) -> MPoly {
        match self.terms.iter().next_back() {
            None => self.clone(),
            Some((_, lead)) => self.scale(&lead.recip()),
        }
    }

    /// Renders with the given variable names.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> MPolyDisplay<'a> {
        MPolyDisplay { poly: self, names }
    }
}

pub struct MPolyDisplay<'a> {
    poly: &'a MPoly,
    names: &'a [String],
}

impl fmt::Display for MPolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.poly.terms.iter().rev() {
            let is_const_term = m.iter().all(|&e| e == 0);
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let a = c.abs();
            if !a.is_one() || is_const_term {
                write!(f, "{}", render_rational(&a))?;
                if !is_const_term {
                    write!(f, "*")?;
                }
            }
            let mut first_var = true;
            for (i, &e) in m.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first_var {
                    write!(f, "*")?;
                }
                first_var = false;
                let name = self.names.get(i).map(|s| s.as_str()).unwrap_or("?");
                if e == 1 {
                    write!(f, "{name}")?;
                } else {
                    write!(f, "{name}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_rational;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    /// x := var 0, y := var 1, z := var 2 in 3 variables
    fn xyz() -> (MPoly, MPoly, MPoly) {
        (MPoly::var(3, 0), MPoly::var(3, 1), MPoly::var(3, 2))
    }

    #[test]
    fn arithmetic_and_eval() {
        let (x, y, _) = xyz();
        // (x + y)^2 = x^2 + 2xy + y^2
        let s = x.add(&y).pow(2);
        let expected = x
            .pow(2)
            .add(&x.mul(&y).scale(&q("2")))
            .add(&y.pow(2));
        assert_eq!(s, expected);
        assert_eq!(s.eval(&[q("1"), q("2"), q("0")]), q("9"));
        assert_eq!(s.total_degree(), 2);
        assert_eq!(s.num_terms(), 3);
    }

    #[test]
    fn cancellation_removes_terms() {
        let (x, y, _) = xyz();
        let p = x.mul(&y).sub(&y.mul(&x));
        assert!(p.is_zero());
    }

    #[test]
    fn substitution() {
        let (x, y, z) = xyz();
        // p = x^2 + y z; substitute x := y + 1
        let p = x.pow(2).add(&y.mul(&z));
        let repl = y.add(&MPoly::one(3));
        let sub = p.substitute(0, &repl);
        // (y+1)^2 + yz = y^2 + 2y + 1 + yz
        let expected = y
            .pow(2)
            .add(&y.scale(&q("2")))
            .add(&MPoly::one(3))
            .add(&y.mul(&z));
        assert_eq!(sub, expected);
    }

    #[test]
    fn univariate_conversion() {
        let (x, _, _) = xyz();
        let p = x.pow(2).sub(&x); // x^2 - x
        let (var, up) = p.as_univariate().unwrap();
        assert_eq!(var, Some(0));
        assert_eq!(up.coeff(2), q("1"));
        assert_eq!(up.coeff(1), q("-1"));
        let (x, y, _) = xyz();
        assert!(x.add(&y).as_univariate().is_none());
        let c = MPoly::constant(3, q("5"));
        let (var, up) = c.as_univariate().unwrap();
        assert_eq!(var, None);
        assert_eq!(up.coeff(0), q("5"));
    }

    #[test]
    fn common_monomial_factoring() {
        let (x, y, _) = xyz();
        // x^2 y^2 + x y^3
        let p = x.pow(2).mul(&y.pow(2)).add(&x.mul(&y.pow(3)));
        assert_eq!(p.common_monomial(), vec![1, 2, 0]);
        let reduced = p.divide_monomial(&p.common_monomial());
        assert_eq!(reduced, x.add(&y));
    }

    #[test]
    fn coeffs_in_variable() {
        let (x, y, _) = xyz();
        // x^2 y + x + 3 as univariate in x: [3, 1, y]
        let p = x.pow(2).mul(&y).add(&x).add(&MPoly::constant(3, q("3")));
        let cs = p.coeffs_in(0);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[0], MPoly::constant(3, q("3")));
        assert_eq!(cs[1], MPoly::one(3));
        assert_eq!(cs[2], y);
    }

    #[test]
    fn display_names() {
        let (x, y, _) = xyz();
        let p = x.pow(2).sub(&y.scale(&q("2"))).add(&MPoly::one(3));
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        assert_eq!(p.display_with(&names).to_string(), "x^2 - 2*y + 1");
    }
}
