//! Univariate polynomials over the exact rationals.
//!
//! These carry the one-parameter curves that show up throughout the library:
//! coordinates of parametric element families, characteristic polynomials of
//! regular representations, and the certificates produced by the set solver
//! (a branch of a quadratic system is often "roots of this polynomial").
//!
//! Coefficients are stored low-degree-first with no trailing zeros; the zero
//! polynomial is the empty coefficient vector.

use num::complex::Complex64;
use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use std::fmt;

use crate::scalar::render_rational;

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::new(vec![c])
    }

    pub fn x() -> Self {
        Poly::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn monomial(deg: usize, c: BigRational) -> Self {
        let mut coeffs = vec![BigRational::zero(); deg + 1];
        coeffs[deg] = c;
        Poly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Poly::new(coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - other.coeff(k)).collect();
        Poly::new(coeffs)
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs =
            vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::new(coeffs)
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k)))
            .collect();
        Poly::new(coeffs)
    }

    /// Euclidean division: `self = q * other + r` with `deg r < deg other`.
    /// Panics on division by the zero polynomial.
    pub fn divrem(&self, other: &Poly) -> (Poly, Poly) {
        assert!(!other.is_zero(), "polynomial division by zero");
        let d = other.degree().unwrap();
        let lead_inv = other.leading().unwrap().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - d];
        while rem.len() > d && !rem.is_empty() {
            let k = rem.len() - 1 - d;
            let c = &rem[rem.len() - 1] * &lead_inv;
            if !c.is_zero() {
                for (j, b) in other.coeffs.iter().enumerate() {
                    let idx = k + j;
                    let v = &rem[idx] - &c * b;
                    rem[idx] = v;
                }
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(|x| x.is_zero()) {
                rem.pop();
            }
            if rem.len() <= d {
                break;
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn rem(&self, other: &Poly) -> Poly {
        self.divrem(other).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Scales to leading coefficient one (zero polynomial stays zero).
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// The radical `p / gcd(p, p')`: same roots, all simple.
    pub fn squarefree_part(&self) -> Poly {
        if self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }

    /// All rational roots with multiplicities, sorted ascending.
    ///
    /// Returns `None` when a coefficient is too large to factor by trial
    /// division; callers fall back to numeric roots in that case.
    pub fn rational_roots(&self) -> Option<Vec<(BigRational, usize)>> {
        if self.is_constant() {
            return Some(Vec::new());
        }
        let mut p = self.clone();
        let mut roots: Vec<(BigRational, usize)> = Vec::new();
        // strip roots at zero
        let mut zero_mult = 0;
        while p.coeff(0).is_zero() && !p.is_zero() {
            p = Poly::new(p.coeffs[1..].to_vec());
            zero_mult += 1;
        }
        if zero_mult > 0 {
            roots.push((BigRational::zero(), zero_mult));
        }
        if p.is_constant() {
            roots.sort_by(|a, b| a.0.cmp(&b.0));
            return Some(roots);
        }
        // clear denominators -> integer coefficients
        let mut lcm = BigInt::one();
        for c in p.coeffs() {
            lcm = num::integer::lcm(lcm, c.denom().clone());
        }
        let ints: Vec<BigInt> = p
            .coeffs()
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let a0 = ints.first().unwrap().abs();
        let an = ints.last().unwrap().abs();
        let ps = divisors(&a0)?;
        let qs = divisors(&an)?;
        let mut candidates: Vec<BigRational> = Vec::new();
        for num_d in &ps {
            for den_d in &qs {
                let r = BigRational::new(num_d.clone(), den_d.clone());
                candidates.push(r.clone());
                candidates.push(-r);
            }
        }
        candidates.sort();
        candidates.dedup();
        for cand in candidates {
            if !p.eval(&cand).is_zero() {
                continue;
            }
            let lin = Poly::new(vec![-&cand * BigRational::one(), BigRational::one()]);
            let mut mult = 0;
            loop {
                let (q, r) = p.divrem(&lin);
                if !r.is_zero() {
                    break;
                }
                p = q;
                mult += 1;
            }
            roots.push((cand, mult));
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        Some(roots)
    }

    /// Divides out all rational roots, returning (rootless quotient, roots).
    pub fn deflate_rational_roots(&self) -> (Poly, Vec<(BigRational, usize)>) {
        let Some(roots) = self.rational_roots() else {
            return (self.clone(), Vec::new());
        };
        let mut p = self.clone();
        for (r, m) in &roots {
            let lin = Poly::new(vec![-r.clone(), BigRational::one()]);
            for _ in 0..*m {
                p = p.divrem(&lin).0;
            }
        }
        (p, roots)
    }

    /// Number of distinct real roots, by Sturm's theorem on the squarefree
    /// part. `None` for the zero polynomial.
    pub fn count_real_roots(&self) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        if self.is_constant() {
            return Some(0);
        }
        let p = self.squarefree_part();
        let chain = sturm_chain(&p);
        let at_minus = sign_variations(&chain, SturmPoint::MinusInf);
        let at_plus = sign_variations(&chain, SturmPoint::PlusInf);
        Some(at_minus - at_plus)
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_real_roots_in(&self, a: &BigRational, b: &BigRational) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        if self.is_constant() || a >= b {
            return Some(0);
        }
        let p = self.squarefree_part();
        let chain = sturm_chain(&p);
        let va = sign_variations(&chain, SturmPoint::At(a.clone()));
        let vb = sign_variations(&chain, SturmPoint::At(b.clone()));
        Some(va.saturating_sub(vb))
    }

    pub fn has_real_root(&self) -> bool {
        self.count_real_roots().map_or(true, |n| n > 0)
    }

    /// `1 + max |a_i / a_n|`: every complex root has modulus below this.
    pub fn cauchy_root_bound(&self) -> f64 {
        let Some(lead) = self.leading() else { return 0.0 };
        let lead = lead.to_f64().unwrap_or(f64::NAN).abs();
        let mut m: f64 = 0.0;
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            m = m.max(c.to_f64().unwrap_or(f64::NAN).abs() / lead);
        }
        1.0 + m
    }

    /// All complex roots in binary64, by Durand-Kerner iteration.
    ///
    /// Exact rational roots should be deflated first; this handles whatever
    /// irrational factor remains (degrees here are single-digit).
    pub fn complex_roots_f64(&self) -> Vec<Complex64> {
        let Some(deg) = self.degree() else { return Vec::new() };
        if deg == 0 {
            return Vec::new();
        }
        let lead = self.leading().unwrap();
        let monic: Vec<f64> = self
            .coeffs
            .iter()
            .map(|c| (c / lead).to_f64().unwrap_or(f64::NAN))
            .collect();
        let eval = |z: Complex64| -> Complex64 {
            let mut acc = Complex64::new(0.0, 0.0);
            for c in monic.iter().rev() {
                acc = acc * z + Complex64::new(*c, 0.0);
            }
            acc
        };
        let bound = self.cauchy_root_bound().max(1.0);
        let seed = Complex64::new(0.4, 0.9) * (0.5 * bound);
        let mut zs: Vec<Complex64> = (0..deg).map(|k| seed.powu(k as u32 + 1)).collect();
        for _ in 0..500 {
            let mut max_step = 0.0f64;
            for i in 0..deg {
                let mut denom = Complex64::new(1.0, 0.0);
                for j in 0..deg {
                    if i != j {
                        denom *= zs[i] - zs[j];
                    }
                }
                if denom.norm() < 1e-300 {
                    // coincident iterates: nudge and continue
                    zs[i] += Complex64::new(1e-6, 1e-6);
                    max_step = f64::MAX;
                    continue;
                }
                let step = eval(zs[i]) / denom;
                zs[i] -= step;
                max_step = max_step.max(step.norm());
            }
            if max_step < 1e-14 {
                break;
            }
        }
        zs
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", render_rational(c))?,
                _ => {
                    if !c.is_one() {
                        write!(f, "{}*", render_rational(c))?;
                    }
                    if k == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Divisors of |n| by trial division; `None` above the feasibility cap.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    if n.is_zero() {
        // every integer divides 0; callers never hit this (constant term
        // zero is stripped first), but return the harmless answer
        return Some(vec![BigInt::one()]);
    }
    let small = n.to_u64()?;
    if small > 1_000_000_000_000 {
        return None;
    }
    let mut divs = Vec::new();
    let mut d = 1u64;
    while d * d <= small {
        if small % d == 0 {
            divs.push(BigInt::from(d));
            if d != small / d {
                divs.push(BigInt::from(small / d));
            }
        }
        d += 1;
    }
    divs.sort();
    Some(divs)
}

enum SturmPoint {
    MinusInf,
    PlusInf,
    At(BigRational),
}

fn sturm_chain(p: &Poly) -> Vec<Poly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let r = chain[n - 2].rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(r.neg());
    }
    chain
}

fn sign_variations(chain: &[Poly], at: SturmPoint) -> usize {
    let signs: Vec<i8> = chain
        .iter()
        .map(|p| match &at {
            SturmPoint::MinusInf => {
                let Some(d) = p.degree() else { return 0 };
                let s = sign_of(p.leading().unwrap());
                if d % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
            SturmPoint::PlusInf => p.leading().map_or(0, sign_of),
            SturmPoint::At(x) => sign_of(&p.eval(x)),
        })
        .collect();
    let mut count = 0;
    let mut last: Option<i8> = None;
    for s in signs {
        if s == 0 {
            continue;
        }
        if let Some(l) = last {
            if l != s {
                count += 1;
            }
        }
        last = Some(s);
    }
    count
}

fn sign_of(r: &BigRational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_rational;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    fn p(coeffs: &[&str]) -> Poly {
        Poly::new(coeffs.iter().map(|s| q(s)).collect())
    }

    #[test]
    fn arithmetic_identities() {
        let a = p(&["1", "2", "1"]); // (t+1)^2
        let b = p(&["1", "1"]);
        assert_eq!(b.mul(&b), a);
        assert_eq!(a.sub(&a), Poly::zero());
        assert_eq!(a.derivative(), p(&["2", "2"]));
        assert_eq!(a.eval(&q("2")), q("9"));
    }

    #[test]
    fn divrem_and_gcd() {
        let a = p(&["-1", "0", "1"]); // t^2 - 1
        let b = p(&["1", "1"]); // t + 1
        let (quot, rem) = a.divrem(&b);
        assert_eq!(quot, p(&["-1", "1"]));
        assert!(rem.is_zero());
        assert_eq!(a.gcd(&b), b.monic());
        // gcd of coprime polys is 1
        assert_eq!(a.gcd(&p(&["1", "0", "1"])).degree(), Some(0));
    }

    #[test]
    fn squarefree_part_drops_multiplicity() {
        let a = p(&["1", "1"]).pow(3).mul(&p(&["-2", "1"]));
        let sf = a.squarefree_part();
        assert_eq!(sf, p(&["1", "1"]).mul(&p(&["-2", "1"])).monic());
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        // t^2 (t - 1/2) (t + 3)^2
        let a = Poly::x()
            .pow(2)
            .mul(&p(&["-1/2", "1"]))
            .mul(&p(&["3", "1"]).pow(2));
        let roots = a.rational_roots().unwrap();
        assert_eq!(
            roots,
            vec![(q("-3"), 2), (q("0"), 2), (q("1/2"), 1)]
        );
        let (quot, _) = a.deflate_rational_roots();
        assert!(quot.is_constant());
    }

    #[test]
    fn irrational_quadratic_has_no_rational_roots() {
        let a = p(&["-2", "0", "1"]); // t^2 - 2
        assert!(a.rational_roots().unwrap().is_empty());
        assert_eq!(a.count_real_roots(), Some(2));
    }

    #[test]
    fn sturm_counts_real_roots() {
        // t^3 - t: roots -1, 0, 1
        let a = p(&["0", "-1", "0", "1"]);
        assert_eq!(a.count_real_roots(), Some(3));
        assert_eq!(a.count_real_roots_in(&q("-1/2"), &q("2")), Some(2));
        // t^2 + 1: no real roots
        assert_eq!(p(&["1", "0", "1"]).count_real_roots(), Some(0));
        assert!(!p(&["1", "0", "1"]).has_real_root());
        // squarefree reduction handled internally
        assert_eq!(p(&["0", "0", "1"]).count_real_roots(), Some(1));
    }

    #[test]
    fn durand_kerner_finds_roots() {
        // t^2 - 2: roots +-sqrt(2)
        let roots = p(&["-2", "0", "1"]).complex_roots_f64();
        let mut mods: Vec<f64> = roots.iter().map(|z| z.norm()).collect();
        mods.sort_by(f64::total_cmp);
        assert!((mods[0] - 2.0f64.sqrt()).abs() < 1e-9);
        assert!((mods[1] - 2.0f64.sqrt()).abs() < 1e-9);
        // t^2 + 1: roots +-i
        let roots = p(&["1", "0", "1"]).complex_roots_f64();
        for z in roots {
            assert!((z.norm() - 1.0).abs() < 1e-9);
            assert!(z.re.abs() < 1e-9);
        }
        let bound = p(&["-2", "0", "1"]).cauchy_root_bound();
        assert!(bound >= 2.0f64.sqrt());
    }




}
