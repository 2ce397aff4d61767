//! The structural taxonomy: center, radical, and the without-order /
//! nice / very-nice verdicts with their certificates.
//!
//! Verdicts are three-valued and carry their justification. A universally
//! quantified property is only ever reported `True` on the strength of a
//! proof — an exhaustive enumeration, a symbolic identity over a complete
//! set description, or a certificate (for instance: in a unital algebra,
//! instantiating the hypothesis a·x·y = a·x·a·y at x = y = 1 yields a² = a,
//! and at y = 1 yields a·x = a·x·a, so every unital algebra is very nice).
//! Sampling can only ever produce `False` (with a re-checked witness) or
//! `Unknown`.

use num::{BigRational, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, Coords};
use crate::endo::{describe_set_rational, is_idempotent, is_in_left_set, sample_members};
use crate::error::AlgebraError;
use crate::linalg::Mat;
use crate::mpoly::MPoly;
use crate::nilpotency::annihilator_subspaces;
use crate::oracle::elements_of;
use crate::poly::Poly;
use crate::scalar::{Field, PrimeField, Rationals};
use crate::sets::{
    lift_to_poly, mul_mpoly_coords, mul_poly_coords, AffineSubspace, ElementSetDescription,
    SetKind,
};

/// The center {a : a·x = x·a for all x}: exact nullspace of the stacked
/// commutator maps a ↦ coordinates of a·e_i − e_i·a.
pub fn center_subspace<F: Field>(alg: &Algebra<F>) -> AffineSubspace<F> {
    let d = alg.dim();
    let mut rows = Vec::with_capacity(d * d);
    for i in 0..d {
        let commutators: Vec<_> = (0..d)
            .map(|m| {
                alg.sub_el(
                    &alg.mul_el(&alg.basis_el(m), &alg.basis_el(i)),
                    &alg.mul_el(&alg.basis_el(i), &alg.basis_el(m)),
                )
            })
            .collect();
        for k in 0..d {
            rows.push(commutators.iter().map(|c| c[k].clone()).collect());
        }
    }
    let m = Mat::from_rows(alg.f().clone(), rows).expect("uniform row length");
    AffineSubspace {
        base: alg.zero_el(),
        directions: m.nullspace(),
    }
}

/// The Jacobson radical, by the characteristic-zero trace criterion: the
/// kernel in A of the bilinear form (a, b) ↦ trace of the regular
/// representation of a·b on the unitalization. The representation is
/// faithful there, which makes the kernel exactly the radical for a
/// finite-dimensional associative algebra over the rationals.
///
/// Only the rational regime is accepted: over a small prime field the trace
/// form can degenerate on a semisimple algebra and the criterion is unsound.
pub fn jacobson_radical<F: Field>(
    alg: &Algebra<F>,
) -> Result<AffineSubspace<F>, AlgebraError> {
    use crate::scalar::ScalarRegime;
    if alg.f().regime() != ScalarRegime::ExactRational {
        return Err(AlgebraError::WrongRegime {
            needed: "rational".into(),
            found: alg.f().regime().to_string(),
        });
    }
    let ext = alg.adjoin_unit();
    let d = alg.dim();
    let trace_of = |x: &[F::El]| -> F::El {
        let x_ext = alg.embed_in_unitalization(x);
        ext.left_regular_matrix(&x_ext).trace()
    };
    let mut rows = Vec::with_capacity(d);
    for j in 0..d {
        let row: Vec<F::El> = (0..d)
            .map(|i| trace_of(&alg.mul_el(&alg.basis_el(i), &alg.basis_el(j))))
            .collect();
        rows.push(row);
    }
    let m = Mat::from_rows(alg.f().clone(), rows).expect("uniform row length");
    Ok(AffineSubspace {
        base: alg.zero_el(),
        directions: m.nullspace(),
    })
}

// ---------------------------------------------------------------------------
// Three-valued verdicts
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    True,
    False,
    Unknown,
}

/// Why a verdict is what it is.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum VerdictReason {
    /// Every relevant element was checked — by enumeration or by a symbolic
    /// identity covering a complete set description.
    ExhaustiveProof,
    /// A structural shortcut proves the property (e.g. the unital argument).
    Certificate,
    /// A concrete element re-fails the defining condition.
    Counterexample,
    /// Sampling found nothing, which proves nothing.
    NotFalsified,
}

#[derive(Clone, Debug)]
pub struct ThreeValued<F: Field> {
    pub verdict: Verdict,
    /// Present on every `False` from a pointwise-checkable condition; the
    /// witness has been re-checked against the definition.
    pub witness: Option<Coords<F>>,
    pub reason: VerdictReason,
}

impl<F: Field> ThreeValued<F> {
    fn proved_true(reason: VerdictReason) -> Self {
        ThreeValued { verdict: Verdict::True, witness: None, reason }
    }
    fn false_with(witness: Coords<F>) -> Self {
        ThreeValued {
            verdict: Verdict::False,
            witness: Some(witness),
            reason: VerdictReason::Counterexample,
        }
    }
    fn unknown() -> Self {
        ThreeValued {
            verdict: Verdict::Unknown,
            witness: None,
            reason: VerdictReason::NotFalsified,
        }
    }
    pub fn is_true(&self) -> bool {
        self.verdict == Verdict::True
    }
    pub fn is_false(&self) -> bool {
        self.verdict == Verdict::False
    }
}

/// Everything the taxonomy can say about one algebra.
#[derive(Clone, Debug)]
pub struct ClassificationReport<F: Field> {
    pub algebra_name: String,
    pub dim: usize,
    pub without_order: ThreeValued<F>,
    pub nice: ThreeValued<F>,
    pub very_nice: ThreeValued<F>,
    pub semisimple: ThreeValued<F>,
    pub semiprime: ThreeValued<F>,
    pub unital: ThreeValued<F>,
    /// Absent over a prime field, where the trace criterion is refused.
    pub radical: Option<AffineSubspace<F>>,
    pub center: AffineSubspace<F>,
    pub notes: Vec<String>,
}

impl<F: Field> ClassificationReport<F> {
    /// The six named predicates as definite booleans where known, in the
    /// order of [`PREDICATE_LABELS`].
    pub fn profile(&self) -> PredicateProfile {
        let as_opt = |t: &ThreeValued<F>| match t.verdict {
            Verdict::True => Some(true),
            Verdict::False => Some(false),
            Verdict::Unknown => None,
        };
        PredicateProfile {
            algebra: self.algebra_name.clone(),
            values: [
                as_opt(&self.without_order),
                as_opt(&self.nice),
                as_opt(&self.very_nice),
                as_opt(&self.semisimple),
                as_opt(&self.semiprime),
                as_opt(&self.unital),
            ],
        }
    }
}

pub const PREDICATE_LABELS: [&str; 6] = [
    "without_order",
    "nice",
    "very_nice",
    "semisimple",
    "semiprime",
    "unital",
];

// ---------------------------------------------------------------------------
// Classification over the rationals
// ---------------------------------------------------------------------------

const FUZZ_SAMPLES: usize = 512;
const SEMIPRIME_NOTE: &str =
    "semiprime and semisimple coincide for finite-dimensional associative algebras; \
     both fields are kept so either name is addressable";

pub fn classify_rational(alg: &Algebra<Rationals>) -> ClassificationReport<Rationals> {
    let mut notes = vec![SEMIPRIME_NOTE.to_string()];

    let without_order = without_order_verdict(alg);
    let unital = unital_verdict(alg);

    let radical = jacobson_radical(alg).expect("rational regime");
    let semisimple = if radical.space_dim() == 0 {
        ThreeValued::proved_true(VerdictReason::ExhaustiveProof)
    } else {
        ThreeValued::false_with(radical.directions[0].clone())
    };
    let semiprime = semisimple.clone();

    let (nice, very_nice) = if alg.is_unital() {
        assert_unital_certificate(alg);
        (
            ThreeValued::proved_true(VerdictReason::Certificate),
            ThreeValued::proved_true(VerdictReason::Certificate),
        )
    } else {
        nice_verdicts_from_description(alg, &mut notes)
    };

    assert!(
        !very_nice.is_true() || nice.is_true(),
        "a very nice verdict requires a nice one"
    );

    ClassificationReport {
        algebra_name: alg.name().to_string(),
        dim: alg.dim(),
        without_order,
        nice,
        very_nice,
        semisimple,
        semiprime,
        unital,
        radical: Some(radical),
        center: center_subspace(alg),
        notes,
    }
}

fn without_order_verdict<F: Field>(alg: &Algebra<F>) -> ThreeValued<F> {
    let (left, right) = annihilator_subspaces(alg);
    if left.space_dim() == 0 && right.space_dim() == 0 {
        ThreeValued::proved_true(VerdictReason::ExhaustiveProof)
    } else {
        let witness = if left.space_dim() > 0 {
            left.directions[0].clone()
        } else {
            right.directions[0].clone()
        };
        ThreeValued::false_with(witness)
    }
}

fn unital_verdict<F: Field>(alg: &Algebra<F>) -> ThreeValued<F> {
    if alg.is_unital() {
        ThreeValued::proved_true(VerdictReason::ExhaustiveProof)
    } else {
        // An existence property has no pointwise witness; the exact linear
        // system u·e_i = e_i = e_i·u being unsolvable is the proof.
        ThreeValued {
            verdict: Verdict::False,
            witness: None,
            reason: VerdictReason::ExhaustiveProof,
        }
    }
}

/// Both-direction soundness of the unital shortcut, probed on sampled
/// elements: whatever satisfies the hypothesis on basis pairs must be
/// idempotent and satisfy the conclusion.
fn assert_unital_certificate(alg: &Algebra<Rationals>) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut pool: Vec<Coords<Rationals>> = vec![alg.zero_el(), alg.unit().unwrap().clone()];
    for i in 0..alg.dim() {
        pool.push(alg.basis_el(i));
    }
    for _ in 0..24 {
        pool.push(random_element(alg, &mut rng));
    }
    for a in pool.iter().filter(|a| is_in_left_set(alg, a)) {
        assert!(
            is_idempotent(alg, a),
            "unital certificate broken: {} satisfies the hypothesis but is not idempotent",
            alg.render_element(a)
        );
        for i in 0..alg.dim() {
            let axi = alg.mul_el(a, &alg.basis_el(i));
            assert_eq!(
                axi,
                alg.mul_el(&axi, a),
                "unital certificate broken on the conclusion identity"
            );
        }
    }
}

/// For a non-unital rational algebra: prove or refute `nice`/`very nice`
/// from a complete description of the hypothesis set, symbolically part by
/// part; fall back to seeded sampling (which can only refute) when the
/// description is partial.
fn nice_verdicts_from_description(
    alg: &Algebra<Rationals>,
    notes: &mut Vec<String>,
) -> (ThreeValued<Rationals>, ThreeValued<Rationals>) {
    let l_desc = describe_set_rational(alg, SetKind::L);
    if !l_desc.complete {
        notes.push(
            "hypothesis set description is partial; nice/very nice checked by sampling only"
                .to_string(),
        );
        return sampled_nice_verdicts(alg, &l_desc);
    }

    let nice_failure = description_conclusion_failure(alg, &l_desc, false);
    let nice = match nice_failure {
        Some(w) => ThreeValued::false_with(w),
        None => ThreeValued::proved_true(VerdictReason::ExhaustiveProof),
    };
    let very_nice = if nice.is_false() {
        // The same witness defeats the stronger property.
        ThreeValued::false_with(nice.witness.clone().unwrap())
    } else {
        match description_conclusion_failure(alg, &l_desc, true) {
            Some(w) => ThreeValued::false_with(w),
            None => ThreeValued::proved_true(VerdictReason::ExhaustiveProof),
        }
    };
    (nice, very_nice)
}

/// Finds an element of the described hypothesis set violating the conclusion
/// (`a·x = a·x·a` for all basis x; with `idempotent_too`, also `a² = a`),
/// or proves there is none. Points are checked directly, families as
/// polynomial identities in the parameter, subspace parts as multivariate
/// identities; a failing identity is turned into a concrete rational witness
/// and re-checked.
fn description_conclusion_failure(
    alg: &Algebra<Rationals>,
    desc: &ElementSetDescription<Rationals>,
    idempotent_too: bool,
) -> Option<Vec<BigRational>> {
    let d = alg.dim();
    for p in &desc.points {
        if !conclusion_holds_at(alg, p, idempotent_too) {
            return Some(p.clone());
        }
    }
    for fam in &desc.families {
        let f = fam.coords().to_vec();
        let mut bad: Vec<Poly> = Vec::new();
        for i in 0..d {
            let fxi = mul_poly_coords(alg, &f, &lift_to_poly(&alg.basis_el(i)));
            let fxif = mul_poly_coords(alg, &fxi, &f);
            for (l, r) in fxi.iter().zip(&fxif) {
                let diff = l.sub(r);
                if !diff.is_zero() {
                    bad.push(diff);
                }
            }
        }
        if idempotent_too {
            let sq = mul_poly_coords(alg, &f, &f);
            for (l, r) in sq.iter().zip(&f) {
                let diff = l.sub(r);
                if !diff.is_zero() {
                    bad.push(diff);
                }
            }
        }
        if let Some(first) = bad.first() {
            // Any parameter outside the finitely many roots exposes the
            // failure; scan small integers.
            let t = (0..)
                .map(|n| BigRational::from_integer(n.into()))
                .find(|t| !first.eval(t).is_zero())
                .expect("a nonzero polynomial has nonroot integers");
            let witness = fam.eval(&t);
            assert!(!conclusion_holds_at(alg, &witness, idempotent_too));
            return Some(witness);
        }
    }
    for sub in &desc.subspaces {
        let k = sub.directions.len();
        let exprs: Vec<MPoly> = (0..d)
            .map(|v| {
                let mut e = MPoly::constant(k, sub.base[v].clone());
                for (m, dir) in sub.directions.iter().enumerate() {
                    e = e.add(&MPoly::var(k, m).scale(&dir[v]));
                }
                e
            })
            .collect();
        let mut bad: Vec<MPoly> = Vec::new();
        let basis: Vec<Vec<MPoly>> = (0..d)
            .map(|i| {
                alg.basis_el(i)
                    .iter()
                    .map(|c| MPoly::constant(k, c.clone()))
                    .collect()
            })
            .collect();
        for i in 0..d {
            let fxi = mul_mpoly_coords(alg, &exprs, &basis[i]);
            let fxif = mul_mpoly_coords(alg, &fxi, &exprs);
            for (l, r) in fxi.iter().zip(&fxif) {
                let diff = l.sub(r);
                if !diff.is_zero() {
                    bad.push(diff);
                }
            }
        }
        if idempotent_too {
            let sq = mul_mpoly_coords(alg, &exprs, &exprs);
            for (l, r) in sq.iter().zip(&exprs) {
                let diff = l.sub(r);
                if !diff.is_zero() {
                    bad.push(diff);
                }
            }
        }
        if let Some(first) = bad.first() {
            let assignment = nonvanishing_assignment(first, k);
            let witness: Vec<BigRational> =
                exprs.iter().map(|e| e.eval(&assignment)).collect();
            assert!(!conclusion_holds_at(alg, &witness, idempotent_too));
            return Some(witness);
        }
    }
    None
}

/// A rational point where the polynomial does not vanish, found on an
/// integer grid big enough that a total miss would force the zero
/// polynomial.
fn nonvanishing_assignment(p: &MPoly, nvars: usize) -> Vec<BigRational> {
    let bound = (p.total_degree() + 1) as i64;
    let mut assignment = vec![BigRational::from_integer(0.into()); nvars];
    fn search(
        p: &MPoly,
        assignment: &mut Vec<BigRational>,
        var: usize,
        bound: i64,
    ) -> bool {
        if var == assignment.len() {
            return !p.eval(assignment).is_zero();
        }
        for v in 0..=bound {
            assignment[var] = BigRational::from_integer(v.into());
            if search(p, assignment, var + 1, bound) {
                return true;
            }
        }
        false
    }
    let found = search(p, &mut assignment, 0, bound);
    assert!(found, "nonzero polynomial vanished on a full grid");
    assignment
}

fn conclusion_holds_at(
    alg: &Algebra<Rationals>,
    a: &[BigRational],
    idempotent_too: bool,
) -> bool {
    if idempotent_too && !is_idempotent(alg, a) {
        return false;
    }
    (0..alg.dim()).all(|i| {
        let axi = alg.mul_el(a, &alg.basis_el(i));
        axi == alg.mul_el(&axi, a)
    })
}

/// Sampling fallback: draws members from the partial description and random
/// elements filtered into the hypothesis set, and looks for conclusion
/// failures. Finding one yields `False` with the witness; finding none
/// proves nothing.
fn sampled_nice_verdicts(
    alg: &Algebra<Rationals>,
    l_desc: &ElementSetDescription<Rationals>,
) -> (ThreeValued<Rationals>, ThreeValued<Rationals>) {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut pool = sample_members(l_desc, &crate::endo::default_sample_params());
    for _ in 0..FUZZ_SAMPLES {
        let a = random_element(alg, &mut rng);
        if is_in_left_set(alg, &a) {
            pool.push(a);
        }
    }
    let mut nice = ThreeValued::unknown();
    let mut very_nice = ThreeValued::unknown();
    for a in &pool {
        if !is_in_left_set(alg, a) {
            continue;
        }
        if nice.verdict == Verdict::Unknown && !conclusion_holds_at(alg, a, false) {
            nice = ThreeValued::false_with(a.clone());
        }
        if very_nice.verdict == Verdict::Unknown && !conclusion_holds_at(alg, a, true) {
            very_nice = ThreeValued::false_with(a.clone());
        }
    }
    (nice, very_nice)
}

fn random_element<F: Field>(alg: &Algebra<F>, rng: &mut ChaCha8Rng) -> Coords<F> {
    (0..alg.dim())
        .map(|_| alg.f().from_i64(rng.gen_range(-9i64..=9)))
        .collect()
}

// ---------------------------------------------------------------------------
// Classification over a prime field
// ---------------------------------------------------------------------------

/// Exhaustive classification over GF(p). The radical is not computed (the
/// trace criterion needs characteristic zero), so the semisimplicity fields
/// stay unknown; the quantified taxonomy predicates are decided by full
/// enumeration whenever the element count fits the enumeration cap.
pub fn classify_prime(alg: &Algebra<PrimeField>) -> ClassificationReport<PrimeField> {
    let mut notes = vec![
        SEMIPRIME_NOTE.to_string(),
        "radical and semisimplicity are not computed over a prime field \
         (characteristic-zero trace criterion)"
            .to_string(),
    ];

    let without_order = without_order_verdict(alg);
    let unital = unital_verdict(alg);

    let (nice, very_nice) = match elements_of(alg) {
        Ok(iter) => {
            let mut nice = ThreeValued::proved_true(VerdictReason::ExhaustiveProof);
            let mut very_nice = ThreeValued::proved_true(VerdictReason::ExhaustiveProof);
            for a in iter {
                if !is_in_left_set(alg, &a) {
                    continue;
                }
                if nice.is_true() && !prime_conclusion_holds_at(alg, &a, false) {
                    nice = ThreeValued::false_with(a.clone());
                }
                if very_nice.is_true() && !prime_conclusion_holds_at(alg, &a, true) {
                    very_nice = ThreeValued::false_with(a.clone());
                }
                if nice.is_false() && very_nice.is_false() {
                    break;
                }
            }
            (nice, very_nice)
        }
        Err(_) => {
            notes.push(format!(
                "{} elements exceed the enumeration cap; nice/very nice left unknown",
                alg.name()
            ));
            (ThreeValued::unknown(), ThreeValued::unknown())
        }
    };

    assert!(!very_nice.is_true() || nice.is_true());

    ClassificationReport {
        algebra_name: alg.name().to_string(),
        dim: alg.dim(),
        without_order,
        nice,
        very_nice,
        semisimple: ThreeValued::unknown(),
        semiprime: ThreeValued::unknown(),
        unital,
        radical: None,
        center: center_subspace(alg),
        notes,
    }
}

fn prime_conclusion_holds_at(
    alg: &Algebra<PrimeField>,
    a: &[u64],
    idempotent_too: bool,
) -> bool {
    if idempotent_too && !is_idempotent(alg, a) {
        return false;
    }
    (0..alg.dim()).all(|i| {
        let axi = alg.mul_el(a, &alg.basis_el(i));
        axi == alg.mul_el(&axi, a)
    })
}

// ---------------------------------------------------------------------------
// Empirical implication table
// ---------------------------------------------------------------------------

/// One algebra's definite predicate values, in [`PREDICATE_LABELS`] order;
/// `None` where the verdict was unknown.
#[derive(Clone, Debug)]
pub struct PredicateProfile {
    pub algebra: String,
    pub values: [Option<bool>; 6],
}

/// One ordered predicate pair, observed across a zoo.
#[derive(Clone, Debug)]
pub struct ImplicationRow {
    pub antecedent: &'static str,
    pub consequent: &'static str,
    /// Algebras where the antecedent held and the consequent was definite.
    pub support: usize,
    /// First algebra with antecedent true and consequent false, if any.
    pub counterexample: Option<String>,
}

impl ImplicationRow {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Observes every ordered pair of taxonomy predicates across the zoo. No
/// implication direction is assumed; rows simply record whether a
/// counterexample to "antecedent ⇒ consequent" was seen, and on how many
/// algebras the pair was actually exercised.
pub fn implication_table(profiles: &[PredicateProfile]) -> Vec<ImplicationRow> {
    let mut rows = Vec::with_capacity(30);
    for (ai, a_label) in PREDICATE_LABELS.iter().enumerate() {
        for (ci, c_label) in PREDICATE_LABELS.iter().enumerate() {
            if ai == ci {
                continue;
            }
            let mut support = 0usize;
            let mut counterexample = None;
            for p in profiles {
                let (Some(av), Some(cv)) = (p.values[ai], p.values[ci]) else {
                    continue;
                };
                if av {
                    support += 1;
                    if !cv && counterexample.is_none() {
                        counterexample = Some(p.algebra.clone());
                    }
                }
            }
            rows.push(ImplicationRow {
                antecedent: a_label,
                consequent: c_label,
                support,
                counterexample,
            });
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BuiltinSpec;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn build(spec: &str) -> Algebra<Rationals> {
        BuiltinSpec::parse(spec).unwrap().build(Rationals).unwrap()
    }

    #[test]
    fn centers_of_the_standard_algebras() {
        let lt2 = build("lower_triangular(2)");
        let z = center_subspace(&lt2);
        assert_eq!(z.space_dim(), 1);
        assert!(z.contains(lt2.f(), &[q(1), q(0), q(1)])); // scalars only
        assert_eq!(center_subspace(&build("diagonal(2)")).space_dim(), 2);
        assert_eq!(center_subspace(&build("zero_product(2)")).space_dim(), 2);
        assert_eq!(center_subspace(&build("matrix_full(2)")).space_dim(), 1);
    }

    #[test]
    fn radicals_match_the_known_answers() {
        let lt2 = build("lower_triangular(2)");
        let rad = jacobson_radical(&lt2).unwrap();
        assert_eq!(rad.space_dim(), 1);
        assert!(rad.contains(lt2.f(), &[q(0), q(1), q(0)])); // span{E21}

        assert_eq!(jacobson_radical(&build("matrix_full(2)")).unwrap().space_dim(), 0);
        assert_eq!(jacobson_radical(&build("diagonal(3)")).unwrap().space_dim(), 0);
        assert_eq!(jacobson_radical(&build("zero_product(2)")).unwrap().space_dim(), 2);
        assert_eq!(
            jacobson_radical(&build("truncated_polynomial(3)")).unwrap().space_dim(),
            3
        );

        let gf2 = PrimeField::new(2).unwrap();
        let modp = BuiltinSpec::parse("lower_triangular(2)").unwrap().build(gf2).unwrap();
        assert!(matches!(
            jacobson_radical(&modp),
            Err(AlgebraError::WrongRegime { .. })
        ));
    }

    #[test]
    fn radical_is_an_ideal() {
        for spec in ["lower_triangular(2)", "upper_triangular(3)", "truncated_polynomial(4)"] {
            let alg = build(spec);
            let rad = jacobson_radical(&alg).unwrap();
            for r in &rad.directions {
                for i in 0..alg.dim() {
                    let left = alg.mul_el(&alg.basis_el(i), r);
                    let right = alg.mul_el(r, &alg.basis_el(i));
                    assert!(rad.contains(alg.f(), &left), "{spec}: e_{i}·r leaves the radical");
                    assert!(rad.contains(alg.f(), &right), "{spec}: r·e_{i} leaves the radical");
                }
            }
        }
    }

    #[test]
    fn unital_algebras_classify_by_certificate() {
        let report = classify_rational(&build("lower_triangular(2)"));
        assert!(report.without_order.is_true());
        assert!(report.unital.is_true());
        assert_eq!(report.nice.reason, VerdictReason::Certificate);
        assert!(report.nice.is_true() && report.very_nice.is_true());
        assert!(report.semisimple.is_false());
        assert!(report.semiprime.is_false());
        let w = report.semisimple.witness.as_ref().unwrap();
        assert_eq!(w, &vec![q(0), q(1), q(0)]);

        let mf2 = classify_rational(&build("matrix_full(2)"));
        assert!(mf2.semisimple.is_true() && mf2.very_nice.is_true() && mf2.without_order.is_true());
    }

    #[test]
    fn zero_product_is_nice_but_not_very_nice() {
        let report = classify_rational(&build("zero_product(2)"));
        assert!(report.without_order.is_false());
        assert!(report.unital.is_false());
        assert!(report.nice.is_true());
        assert_eq!(report.nice.reason, VerdictReason::ExhaustiveProof);
        assert!(report.very_nice.is_false());
        let w = report.very_nice.witness.as_ref().unwrap();
        // the witness is a non-idempotent member of the hypothesis set
        assert!(is_in_left_set(&build("zero_product(2)"), w));
        assert!(!w.iter().all(num::Zero::is_zero));
        assert!(report.semisimple.is_false());
    }

    #[test]
    fn truncated_polynomial_algebras_are_not_nice() {
        // a = t lies in the hypothesis set (the cube of the algebra is zero)
        // yet a·t = t² ≠ 0 = a·t·a.
        let report = classify_rational(&build("truncated_polynomial(2)"));
        assert!(report.nice.is_false());
        assert!(report.very_nice.is_false());
        let w = report.nice.witness.as_ref().unwrap();
        let alg = build("truncated_polynomial(2)");
        assert!(is_in_left_set(&alg, w));
        assert!(!conclusion_holds_at(&alg, w, false));

        let report3 = classify_rational(&build("truncated_polynomial(3)"));
        assert!(report3.nice.is_false());
    }

    #[test]
    fn incomplete_description_yields_unknown() {
        let alg = build("direct_sum(lower_triangular(2),zero_product(2))");
        let report = classify_rational(&alg);
        assert_eq!(report.nice.verdict, Verdict::Unknown);
        assert_eq!(report.nice.reason, VerdictReason::NotFalsified);
        // The summand with all products zero sits inside the left set, and its
        // nonzero vectors are honest counterexamples to idempotency — sampling
        // is allowed to find one and return a definite False.
        assert_eq!(report.very_nice.verdict, Verdict::False);
        assert_eq!(report.very_nice.reason, VerdictReason::Counterexample);
        let w = report.very_nice.witness.as_ref().unwrap();
        assert!(is_in_left_set(&alg, w));
        assert!(!is_idempotent(&alg, w));
        assert!(report.notes.iter().any(|n| n.contains("sampling")));
        // The exact parts are still exact.
        assert!(report.without_order.is_false());
        assert!(report.semisimple.is_false());
    }

    #[test]
    fn prime_field_classification_is_exhaustive() {
        let gf3 = PrimeField::new(3).unwrap();
        let lt2 = BuiltinSpec::parse("lower_triangular(2)").unwrap().build(gf3).unwrap();
        let report = classify_prime(&lt2);
        assert!(report.nice.is_true() && report.very_nice.is_true());
        assert_eq!(report.nice.reason, VerdictReason::ExhaustiveProof);
        assert!(report.without_order.is_true());
        assert!(report.radical.is_none());
        assert_eq!(report.semisimple.verdict, Verdict::Unknown);

        let gf2 = PrimeField::new(2).unwrap();
        let zp2 = BuiltinSpec::parse("zero_product(2)").unwrap().build(gf2).unwrap();
        let report = classify_prime(&zp2);
        assert!(report.nice.is_true());
        assert!(report.very_nice.is_false());
        let w = report.very_nice.witness.as_ref().unwrap();
        assert!(!is_idempotent(&zp2, w));
    }

    #[test]
    fn implication_table_reads_off_the_zoo() {
        let profiles: Vec<PredicateProfile> = [
            "lower_triangular(2)",
            "matrix_full(2)",
            "zero_product(2)",
            "truncated_polynomial(2)",
        ]
        .iter()
        .map(|s| classify_rational(&build(s)).profile())
        .collect();
        let rows = implication_table(&profiles);
        assert_eq!(rows.len(), 30);

        let find = |a: &str, c: &str| {
            rows.iter()
                .find(|r| r.antecedent == a && r.consequent == c)
                .unwrap()
        };
        // very nice ⇒ nice: no counterexample anywhere.
        assert!(find("very_nice", "nice").holds());
        // nice ⇒ without order: the zero-product algebra defeats it.
        let row = find("nice", "without_order");
        assert_eq!(row.counterexample.as_deref(), Some("zero_product(2)"));
        // unital ⇒ very nice: holds with support from both unital entries.
        let row = find("unital", "very_nice");
        assert!(row.holds());
        assert_eq!(row.support, 2);

        assert!(implication_table(&[]).iter().all(|r| r.holds() && r.support == 0));
    }
}
