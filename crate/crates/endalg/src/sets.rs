//! Descriptions of structured element sets.
//!
//! The sets this library cares about — endomorphic-left elements, their
//! right-handed mirror, idempotents, the nilpotent classes, the center —
//! are solution sets of polynomial conditions on coordinates. Over a prime
//! field they are finite point lists; over the rationals they decompose into
//! isolated points, one-parameter polynomial families (lines and curves),
//! and affine subspaces. [`ElementSetDescription`] carries all three kinds
//! plus an explicit completeness flag: a description is only ever treated as
//! the whole set when its provenance guarantees it.

use num::{BigRational, Zero};

use crate::algebra::{Algebra, AlgebraId, Coords};
use crate::error::AlgebraError;
use crate::linalg::{span_basis, Mat};
use crate::mpoly::MPoly;
use crate::poly::Poly;
use crate::scalar::{Field, Rationals};

/// The predicate sets the library can describe and enumerate.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum SetKind {
    /// `a x a y = a x y` for all `x, y`.
    L,
    /// `x y a = x a y a` for all `x, y`.
    R,
    /// Idempotents `a² = a`.
    I,
    /// Cube zero: `a³ = 0`.
    N3,
    /// `a x y = 0` for all `x, y`.
    NPrime3,
    /// Nilpotent elements.
    N,
    /// Quasinilpotent elements (spectrum `{0}` in the unitalization).
    QN,
    /// The center.
    Z,
    /// `L` with `NPrime3` removed.
    Q,
}

impl SetKind {
    pub fn parse(s: &str) -> Result<Self, AlgebraError> {
        match s {
            "L" => Ok(SetKind::L),
            "R" => Ok(SetKind::R),
            "I" => Ok(SetKind::I),
            "N3" => Ok(SetKind::N3),
            "NP3" => Ok(SetKind::NPrime3),
            "N" => Ok(SetKind::N),
            "QN" => Ok(SetKind::QN),
            "Z" => Ok(SetKind::Z),
            "Q" => Ok(SetKind::Q),
            _ => Err(AlgebraError::Invalid(format!(
                "unknown set {s:?} (expected one of L, R, I, N3, NP3, N, QN, Z, Q)"
            ))),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            SetKind::L => "L",
            SetKind::R => "R",
            SetKind::I => "I",
            SetKind::N3 => "N3",
            SetKind::NPrime3 => "NP3",
            SetKind::N => "N",
            SetKind::QN => "QN",
            SetKind::Z => "Z",
            SetKind::Q => "Q",
        }
    }
}

/// How a set description was produced, and hence how much it can be trusted.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SetProvenance {
    /// Exact case-split solve over the rationals.
    ExactSolve,
    /// Exhaustive enumeration over a prime field.
    FiniteFieldExhaustive,
    /// Known members only; never complete.
    PartialHeuristic,
}

/// A one-parameter family `t ↦ (p_0(t), ..., p_{d-1}(t))` of elements,
/// coordinates polynomial in the parameter.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParametricElement {
    coords: Vec<Poly>,
}

impl ParametricElement {
    pub fn new(coords: Vec<Poly>) -> Self {
        ParametricElement { coords }
    }

    /// The affine family `base + t · dir`.
    pub fn line(base: &[BigRational], dir: &[BigRational]) -> Self {
        assert_eq!(base.len(), dir.len());
        let coords = base
            .iter()
            .zip(dir)
            .map(|(b, d)| Poly::new(vec![b.clone(), d.clone()]))
            .collect();
        ParametricElement { coords }
    }

    pub fn coords(&self) -> &[Poly] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn eval(&self, t: &BigRational) -> Vec<BigRational> {
        self.coords.iter().map(|p| p.eval(t)).collect()
    }

    pub fn degree(&self) -> usize {
        self.coords
            .iter()
            .filter_map(|p| p.degree())
            .max()
            .unwrap_or(0)
    }

    /// For affine families, the `(base, direction)` pair.
    pub fn as_line(&self) -> Option<(Vec<BigRational>, Vec<BigRational>)> {
        if self.degree() > 1 {
            return None;
        }
        let base = self.coords.iter().map(|p| p.coeff(0)).collect();
        let dir: Vec<BigRational> = self.coords.iter().map(|p| p.coeff(1)).collect();
        Some((base, dir))
    }

    pub fn is_constant(&self) -> bool {
        self.coords.iter().all(|p| p.is_constant())
    }

    /// Scales an affine family so its direction has first nonzero coordinate
    /// one, then shifts the base to zero at that coordinate. Non-affine
    /// families are left as built (they are already deterministic).
    pub fn canonicalized(&self) -> ParametricElement {
        let Some((mut base, mut dir)) = self.as_line() else {
            return self.clone();
        };
        let Some(lead) = dir.iter().position(|c| !c.is_zero()) else {
            return self.clone();
        };
        let scale = dir[lead].recip();
        for c in dir.iter_mut() {
            *c = &*c * &scale;
        }
        let shift = base[lead].clone();
        for (b, d) in base.iter_mut().zip(&dir) {
            *b = &*b - &shift * d;
        }
        ParametricElement::line(&base, &dir)
    }

    /// Human-readable form like `E11 + t*E21`.
    pub fn render(&self, alg: &Algebra<Rationals>) -> String {
        let mut parts = Vec::new();
        for (i, p) in self.coords.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let label = &alg.labels()[i];
            let coeff = p.to_string();
            if coeff == "1" {
                parts.push(label.clone());
            } else if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                parts.push(format!("({coeff})*{label}"));
            } else {
                parts.push(format!("{coeff}*{label}"));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }

    /// Deterministic ordering key: (degree, coefficient table).
    fn sort_key(&self) -> (usize, Vec<Vec<BigRational>>) {
        (
            self.degree(),
            self.coords.iter().map(|p| p.coeffs().to_vec()).collect(),
        )
    }
}

/// An affine subspace `base + span(directions)`; captures solution branches
/// with more than one free parameter (for instance, algebras in which every
/// element is endomorphic-left).
#[derive(Clone, PartialEq, Debug)]
pub struct AffineSubspace<F: Field> {
    pub base: Coords<F>,
    pub directions: Vec<Coords<F>>,
}

impl<F: Field> AffineSubspace<F> {
    pub fn space_dim(&self) -> usize {
        self.directions.len()
    }

    /// Canonical form: directions reduced to RREF basis, base reduced
    /// against the pivots so the representation is unique.
    pub fn canonicalized(&self, f: &F) -> AffineSubspace<F> {
        let dim = self.base.len();
        let dirs = span_basis(f.clone(), &self.directions, dim);
        let mut base = self.base.clone();
        for d in &dirs {
            let lead = d
                .iter()
                .position(|c| !f.is_zero(c))
                .expect("basis vectors are nonzero");
            // d[lead] = 1 after RREF
            let factor = base[lead].clone();
            for (b, dc) in base.iter_mut().zip(d) {
                *b = f.sub(b, &f.mul(&factor, dc));
            }
        }
        AffineSubspace { base, directions: dirs }
    }

    pub fn contains(&self, f: &F, v: &[F::El]) -> bool {
        if self.directions.is_empty() {
            return self.base.as_slice() == v;
        }
        let dim = self.base.len();
        let diff: Vec<F::El> = v
            .iter()
            .zip(&self.base)
            .map(|(a, b)| f.sub(a, b))
            .collect();
        let cols: Vec<Vec<F::El>> = (0..dim)
            .map(|i| self.directions.iter().map(|d| d[i].clone()).collect())
            .collect();
        let m = Mat::from_rows(f.clone(), cols).expect("uniform");
        m.solve(&diff).is_some()
    }

    /// As a one-parameter family when one-dimensional.
    pub fn as_family(&self) -> Option<ParametricElement>
    where
        F: HasRationalCoords,
    {
        if self.directions.len() != 1 {
            return None;
        }
        let base = F::to_rationals(&self.base);
        let dir = F::to_rationals(&self.directions[0]);
        Some(ParametricElement::line(&base, &dir))
    }
}

/// Marker for fields whose elements view as exact rationals (just the
/// rationals themselves; lets subspaces emit rational families).
pub trait HasRationalCoords: Field {
    fn to_rationals(coords: &[Self::El]) -> Vec<BigRational>;
}

impl HasRationalCoords for Rationals {
    fn to_rationals(coords: &[BigRational]) -> Vec<BigRational> {
        coords.to_vec()
    }
}

impl HasRationalCoords for crate::scalar::PrimeField {
    /// Residues lift to the integers 0..p as exact rationals.
    fn to_rationals(coords: &[u64]) -> Vec<BigRational> {
        coords
            .iter()
            .map(|&c| BigRational::from_integer(c.into()))
            .collect()
    }
}

/// The description of one predicate set in one algebra.
#[derive(Clone, Debug)]
pub struct ElementSetDescription<F: Field> {
    pub algebra_name: String,
    pub algebra_id: AlgebraId,
    pub dim: usize,
    pub set: SetKind,
    pub points: Vec<Coords<F>>,
    /// One-parameter families (rational regime only).
    pub families: Vec<ParametricElement>,
    /// Affine solution branches with two or more free parameters
    /// (rational regime only).
    pub subspaces: Vec<AffineSubspace<F>>,
    pub complete: bool,
    pub provenance: SetProvenance,
    /// Caveats worth surfacing (irrational roots skipped, punctured parts,
    /// heuristic construction, ...). Never affects `complete` by itself.
    pub notes: Vec<String>,
}

impl<F: Field> ElementSetDescription<F> {
    pub fn new<A: AsRef<Algebra<F>>>(alg: A, set: SetKind, provenance: SetProvenance) -> Self {
        let alg = alg.as_ref();
        ElementSetDescription {
            algebra_name: alg.name().to_string(),
            algebra_id: alg.id(),
            dim: alg.dim(),
            set,
            points: Vec::new(),
            families: Vec::new(),
            subspaces: Vec::new(),
            complete: false,
            provenance,
            notes: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && self.families.is_empty() && self.subspaces.is_empty()
    }

    /// Sorts, normalizes, and deduplicates all parts. Constant families
    /// collapse into points; one-dimensional subspaces stay subspaces only
    /// if they were built as such (the solver emits lines as families).
    pub fn canonicalize(&mut self, f: &F)
    where
        F: HasRationalCoords,
    {
        // families: normalize, demote constants to points
        let mut families = Vec::new();
        for fam in &self.families {
            if fam.is_constant() {
                let point = fam.eval(&BigRational::zero());
                self.points.push(
                    point
                        .iter()
                        .map(|c| {
                            f.parse(&crate::scalar::render_rational(c))
                                .expect("rational coordinate")
                        })
                        .collect(),
                );
            } else {
                families.push(fam.canonicalized());
            }
        }
        families.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        families.dedup();
        self.families = families;

        self.subspaces = self
            .subspaces
            .iter()
            .map(|s| s.canonicalized(f))
            .collect();
        self.subspaces
            .sort_by(|a, b| (a.space_dim(), &a.base, &a.directions).cmp(&(
                b.space_dim(),
                &b.base,
                &b.directions,
            )));
        self.subspaces.dedup();

        // drop points already covered by a family or subspace
        let families = self.families.clone();
        let subspaces = self.subspaces.clone();
        self.points.retain(|p| {
            let as_q = F::to_rationals(p);
            let in_family = families.iter().any(|fam| {
                fam.as_line().is_some_and(|(base, dir)| {
                    line_contains(&base, &dir, &as_q)
                })
            });
            let in_subspace = subspaces.iter().any(|s| s.contains(f, p));
            !(in_family || in_subspace)
        });
        self.points.sort();
        self.points.dedup();
    }

    /// Total point count for finite descriptions (prime-field exhaustive).
    pub fn point_count(&self) -> usize {
        self.points.len()
    }
}

/// Does the affine line `base + t·dir` pass through `v` (dir ≠ 0)?
fn line_contains(base: &[BigRational], dir: &[BigRational], v: &[BigRational]) -> bool {
    let Some(lead) = dir.iter().position(|c| !c.is_zero()) else {
        return base == v;
    };
    let t = (&v[lead] - &base[lead]) / &dir[lead];
    base.iter()
        .zip(dir)
        .zip(v)
        .all(|((b, d), x)| &(b + d * &t) == x)
}

impl<F: Field> AsRef<Algebra<F>> for Algebra<F> {
    fn as_ref(&self) -> &Algebra<F> {
        self
    }
}

// ---------------------------------------------------------------------------
// Coordinate arithmetic with polynomial entries
// ---------------------------------------------------------------------------

/// Product of two elements whose coordinates are univariate polynomials,
/// using the algebra's rational structure constants.
pub fn mul_poly_coords(
    alg: &Algebra<Rationals>,
    a: &[Poly],
    b: &[Poly],
) -> Vec<Poly> {
    let d = alg.dim();
    let mut out = vec![Poly::zero(); d];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            let prod = ai.mul(bj);
            for (k, c) in alg.basis_product(i, j).iter().enumerate() {
                if !c.is_zero() {
                    out[k] = out[k].add(&prod.scale(c));
                }
            }
        }
    }
    out
}

/// Product of two elements whose coordinates are multivariate polynomials.
pub fn mul_mpoly_coords(
    alg: &Algebra<Rationals>,
    a: &[MPoly],
    b: &[MPoly],
) -> Vec<MPoly> {
    let d = alg.dim();
    let nvars = a
        .first()
        .map(MPoly::nvars)
        .or_else(|| b.first().map(MPoly::nvars))
        .unwrap_or(0);
    let mut out = vec![MPoly::zero(nvars); d];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            let prod = ai.mul(bj);
            for (k, c) in alg.basis_product(i, j).iter().enumerate() {
                if !c.is_zero() {
                    out[k] = out[k].add(&prod.scale(c));
                }
            }
        }
    }
    out
}

/// Lifts constant coordinates to polynomial coordinates.
pub fn lift_to_poly(coords: &[BigRational]) -> Vec<Poly> {
    coords.iter().map(|c| Poly::constant(c.clone())).collect()
}

/// The generic element `Σ s_i e_i` with one symbolic variable per coordinate.
pub fn generic_element(dim: usize) -> Vec<MPoly> {
    (0..dim).map(|i| MPoly::var(dim, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BuiltinSpec;
    use crate::scalar::parse_rational;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    fn qv(ss: &[&str]) -> Vec<BigRational> {
        ss.iter().map(|s| q(s)).collect()
    }

    #[test]
    fn line_canonicalization_scales_and_shifts() {
        // family (2 + 4t, 6t, 1): direction (4,6,0) -> (1, 3/2, 0),
        // base (2,0,1) shifted so coordinate 0 vanishes: (0, -3, 1)
        let fam = ParametricElement::line(&qv(&["2", "0", "1"]), &qv(&["4", "6", "0"]));
        let canon = fam.canonicalized();
        let (base, dir) = canon.as_line().unwrap();
        assert_eq!(dir, qv(&["1", "3/2", "0"]));
        assert_eq!(base, qv(&["0", "-3", "1"]));
        // same set: original points lie on the canonical line
        for t in ["0", "1", "-2/3"] {
            let p = fam.eval(&q(t));
            assert!(line_contains(&base, &dir, &p));
        }
    }

    #[test]
    fn family_eval_and_render() {
        let alg = BuiltinSpec::LowerTriangular(2).build(Rationals).unwrap();
        let fam = ParametricElement::line(&qv(&["1", "0", "0"]), &qv(&["0", "1", "0"]));
        assert_eq!(fam.eval(&q("2")), qv(&["1", "2", "0"]));
        assert_eq!(fam.render(&alg), "E11 + t*E21");
        assert_eq!(fam.degree(), 1);
    }

    #[test]
    fn subspace_contains_and_canonical_form() {
        let s = AffineSubspace::<Rationals> {
            base: qv(&["1", "1", "0"]),
            directions: vec![qv(&["2", "0", "0"]), qv(&["2", "2", "0"])],
        };
        let c = s.canonicalized(&Rationals);
        // direction span is the (e0, e1) plane; base reduces to origin-slice
        assert_eq!(c.directions, vec![qv(&["1", "0", "0"]), qv(&["0", "1", "0"])]);
        assert_eq!(c.base, qv(&["0", "0", "0"]));
        assert!(s.contains(&Rationals, &qv(&["5", "-3", "0"])));
        assert!(!s.contains(&Rationals, &qv(&["0", "0", "1"])));
    }

    #[test]
    fn canonicalize_dedups_and_absorbs_points() {
        let alg = BuiltinSpec::LowerTriangular(2).build(Rationals).unwrap();
        let mut desc = ElementSetDescription::new(&alg, SetKind::L, SetProvenance::ExactSolve);
        desc.points.push(qv(&["0", "0", "0"]));
        desc.points.push(qv(&["1", "2", "0"])); // lies on the family below
        desc.points.push(qv(&["1", "0", "1"]));
        desc.families
            .push(ParametricElement::line(&qv(&["1", "0", "0"]), &qv(&["0", "2", "0"])));
        desc.families
            .push(ParametricElement::line(&qv(&["1", "4", "0"]), &qv(&["0", "1", "0"])));
        desc.canonicalize(&Rationals);
        // the two families describe the same line -> one canonical family
        assert_eq!(desc.families.len(), 1);
        let (base, dir) = desc.families[0].as_line().unwrap();
        assert_eq!(base, qv(&["1", "0", "0"]));
        assert_eq!(dir, qv(&["0", "1", "0"]));
        // the absorbed point is gone; 0 and the unit remain, sorted
        assert_eq!(desc.points, vec![qv(&["0", "0", "0"]), qv(&["1", "0", "1"])]);
    }

    #[test]
    fn poly_coordinate_products_match_pointwise_products() {
        let alg = BuiltinSpec::LowerTriangular(2).build(Rationals).unwrap();
        // f(t) = E11 + t E21, g(t) = t^2 E21 + E22
        let f = vec![Poly::one(), Poly::x(), Poly::zero()];
        let g = vec![Poly::zero(), Poly::x().pow(2), Poly::one()];
        let prod = mul_poly_coords(&alg, &f, &g);
        for t in ["0", "1", "-3", "1/2"] {
            let t = q(t);
            let lhs: Vec<BigRational> = prod.iter().map(|p| p.eval(&t)).collect();
            let ft: Vec<BigRational> = f.iter().map(|p| p.eval(&t)).collect();
            let gt: Vec<BigRational> = g.iter().map(|p| p.eval(&t)).collect();
            assert_eq!(lhs, alg.mul_el(&ft, &gt));
        }
    }

    #[test]
    fn mpoly_coordinate_products_match_pointwise_products() {
        let alg = BuiltinSpec::LowerTriangular(2).build(Rationals).unwrap();
        let gen = generic_element(3);
        let sq = mul_mpoly_coords(&alg, &gen, &gen);
        let point = qv(&["2", "-1", "3"]);
        let lhs: Vec<BigRational> = sq.iter().map(|p| p.eval(&point)).collect();
        assert_eq!(lhs, alg.mul_el(&point, &point));
    }

    #[test]
    fn set_kind_parse_and_label() {
        for s in ["L", "R", "I", "N3", "NP3", "N", "QN", "Z", "Q"] {
            assert_eq!(SetKind::parse(s).unwrap().label(), s);
        }
        assert!(SetKind::parse("X").is_err());
    }
}
