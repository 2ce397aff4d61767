//! Exhaustive finite-field enumeration: the independent ground truth for
//! every purely algebraic statement, plus the algebra zoo generator.
//!
//! Everything here is brute force on purpose. The exact solver and the
//! subspace machinery elsewhere in the crate are clever; this module is the
//! part that is merely *right*, by trying all `p^dim` elements (or all
//! `p^(dim^3)` multiplication tables). Agreement between the two is what the
//! integration suite leans on.
//!
//! Finite fields are a testing device, not a claim domain: the theorem suite
//! carries a banner recording that closedness and the arguments needing
//! unbounded scalars are not asserted here, and that quasinilpotence is read
//! through the characteristic polynomial of the regular representation.

use std::collections::BTreeSet;

use num::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Algebra;
use crate::endo::{
    conjugate_in_unitalization, describe_set_prime, invert, is_central, is_idempotent,
    is_in_left_set, is_member,
};
use crate::error::AlgebraError;
use crate::linalg::Mat;
use crate::scalar::{PrimeField, Rationals};
use crate::sets::{ElementSetDescription, SetKind};

/// Hard cap on exhaustive element enumeration (`p^dim` elements).
pub const ENUM_CAP: u64 = 1 << 24;

/// Hard cap on exhaustive multiplication-table enumeration (`p^(dim^3)`).
pub const TABLE_CAP: u64 = 1 << 20;

/// Cap on `p^dim` for the theorem suite, which loops over pairs of elements.
pub const SUITE_ELEMENT_CAP: u64 = 1 << 12;

/// Conjugation closure is checked against every invertible of the
/// unitalization when `p^(dim+1)` stays under this; sampled otherwise.
pub const CONJUGATOR_ENUM_CAP: u64 = 1 << 16;

const SEEDED_CONJUGATORS: usize = 200;

/// All `p^dim` coordinate tuples over GF(p), lexicographically ascending
/// (last coordinate fastest).
pub struct ElementIter {
    p: u64,
    current: Option<Vec<u64>>,
}

impl ElementIter {
    pub fn new(p: u64, dim: usize) -> Self {
        ElementIter {
            p,
            current: Some(vec![0; dim]),
        }
    }
}

impl Iterator for ElementIter {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().expect("checked above");
        let mut i = cur.len();
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < self.p {
                break;
            }
            cur[i] = 0;
        }
        Some(out)
    }
}

/// `p^dim`, refused (SizeLimit) beyond `cap`.
pub fn checked_power(p: u64, exp: usize, cap: u64) -> Result<u64, AlgebraError> {
    let mut n: u64 = 1;
    for _ in 0..exp {
        n = n
            .checked_mul(p)
            .filter(|&n| n <= cap)
            .ok_or_else(|| {
                AlgebraError::SizeLimit(format!("{p}^{exp} exceeds enumeration cap {cap}"))
            })?;
    }
    Ok(n)
}

/// Iterator over every element of a prime-field algebra; errors out when the
/// space exceeds [`ENUM_CAP`].
pub fn elements_of(alg: &Algebra<PrimeField>) -> Result<ElementIter, AlgebraError> {
    let p = alg.f().modulus();
    checked_power(p, alg.dim(), ENUM_CAP)?;
    Ok(ElementIter::new(p, alg.dim()))
}

// ---------------------------------------------------------------------------
// Predicate enumeration
// ---------------------------------------------------------------------------

/// A membership predicate the oracle can enumerate. `NiceHypothesis` is the
/// hypothesis side of the niceness implication read as a set — elements with
/// a·x·a·y = a·x·y for all x, y
/// — which is by definition the left-endomorphic set itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OraclePredicate {
    Set(SetKind),
    NiceHypothesis,
}

impl OraclePredicate {
    pub fn parse(s: &str) -> Result<Self, AlgebraError> {
        if s.eq_ignore_ascii_case("nice-hypothesis") {
            return Ok(OraclePredicate::NiceHypothesis);
        }
        SetKind::parse(s).map(OraclePredicate::Set)
    }

    pub fn kind(self) -> SetKind {
        match self {
            OraclePredicate::Set(k) => k,
            OraclePredicate::NiceHypothesis => SetKind::L,
        }
    }

    pub fn label(self) -> String {
        match self {
            OraclePredicate::Set(k) => k.label().to_string(),
            OraclePredicate::NiceHypothesis => "nice-hypothesis".into(),
        }
    }
}

/// Every element of the algebra satisfying the predicate, in lexicographic
/// coordinate order. All `p^dim` candidates are tested.
pub fn enumerate_predicate_set(
    alg: &Algebra<PrimeField>,
    predicate: OraclePredicate,
) -> Result<Vec<Vec<u64>>, AlgebraError> {
    Ok(describe_set_prime(alg, predicate.kind())?.points)
}

// ---------------------------------------------------------------------------
// The theorem suite
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteStatus {
    Pass,
    Fail,
    /// The claim's premise is absent here, or it is not a finite-field
    /// statement at all; the detail says which.
    Skipped,
}

#[derive(Debug, Clone)]
pub struct SuiteRow {
    pub item: String,
    pub status: SuiteStatus,
    pub detail: String,
}

/// Outcome of running every algebraic claim exhaustively over one
/// prime-field algebra.
#[derive(Debug, Clone)]
pub struct TheoremSuiteReport {
    pub algebra_name: String,
    pub modulus: u64,
    pub rows: Vec<SuiteRow>,
    pub banner: String,
}

impl TheoremSuiteReport {
    /// No row failed (skipped rows are fine: their premises were absent).
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|r| r.status != SuiteStatus::Fail)
    }
}

fn pass(item: &str, detail: String) -> SuiteRow {
    SuiteRow {
        item: item.into(),
        status: SuiteStatus::Pass,
        detail,
    }
}

fn skip(item: &str, detail: String) -> SuiteRow {
    SuiteRow {
        item: item.into(),
        status: SuiteStatus::Skipped,
        detail,
    }
}

fn fail(item: &str, detail: String) -> SuiteRow {
    SuiteRow {
        item: item.into(),
        status: SuiteStatus::Fail,
        detail,
    }
}

fn right_regular_matrix(alg: &Algebra<PrimeField>, a: &[u64]) -> Mat<PrimeField> {
    let d = alg.dim();
    let images: Vec<Vec<u64>> = (0..d).map(|c| alg.mul_el(&alg.basis_el(c), a)).collect();
    let rows: Vec<Vec<u64>> = (0..d)
        .map(|r| (0..d).map(|c| images[c][r]).collect())
        .collect();
    Mat::from_rows(alg.f().clone(), rows).expect("uniform rows")
}

/// Runs every purely algebraic claim about the left-endomorphic machinery
/// over all elements (and pairs) of a prime-field algebra: power
/// stabilization, idempotent absorption, closure of the set under products
/// and conjugation, the zero-divisor property, the nice-algebra
/// consequences, the nilpotency collapse, and the annihilator criterion for
/// a trivial linear ideal. A failed row names a witness.
pub fn exhaustive_theorem_suite(
    alg: &Algebra<PrimeField>,
) -> Result<TheoremSuiteReport, AlgebraError> {
    let p = alg.f().modulus();
    let d = alg.dim();
    checked_power(p, d, SUITE_ELEMENT_CAP)?;

    let everything: Vec<Vec<u64>> = ElementIter::new(p, d).collect();
    let l_set: Vec<Vec<u64>> = everything
        .iter()
        .filter(|a| is_in_left_set(alg, a))
        .cloned()
        .collect();
    let i_set: Vec<Vec<u64>> = everything
        .iter()
        .filter(|a| is_idempotent(alg, a))
        .cloned()
        .collect();
    let l_btree: BTreeSet<Vec<u64>> = l_set.iter().cloned().collect();
    let zero = alg.zero_el();
    let mut rows = Vec::new();

    // Power stabilization on the left set: a³ = a⁴ always.
    let mut bad = None;
    for a in &l_set {
        if alg.power_el(a, 3) != alg.power_el(a, 4) {
            bad = Some(alg.render_element(a));
        }
    }
    rows.push(match bad {
        Some(w) => fail("powers stabilize by the cube", format!("a³ ≠ a⁴ for a = {w}")),
        None => pass(
            "powers stabilize by the cube",
            format!("a³ = a⁴ for all {} members", l_set.len()),
        ),
    });

    // Products of members with idempotents stay idempotent.
    let mut bad = None;
    for a in &l_set {
        for e in &i_set {
            if !is_idempotent(alg, &alg.mul_el(a, e)) {
                bad = Some(format!(
                    "a = {}, e = {}",
                    alg.render_element(a),
                    alg.render_element(e)
                ));
            }
        }
    }
    rows.push(match bad {
        Some(w) => fail("members absorb idempotents", format!("a·e not idempotent at {w}")),
        None => pass(
            "members absorb idempotents",
            format!("{} × {} products all idempotent", l_set.len(), i_set.len()),
        ),
    });

    // The set is closed under products; record whether [L]² is strictly
    // smaller (on an algebra with all products zero it collapses to {0}).
    let mut bad = None;
    let mut products: BTreeSet<Vec<u64>> = BTreeSet::new();
    for a in &l_set {
        for b in &l_set {
            let ab = alg.mul_el(a, b);
            if !is_in_left_set(alg, &ab) {
                bad = Some(format!(
                    "a = {}, b = {}",
                    alg.render_element(a),
                    alg.render_element(b)
                ));
            }
            products.insert(ab);
        }
    }
    rows.push(match bad {
        Some(w) => fail("the set is closed under products", format!("a·b left the set at {w}")),
        None => {
            let strict = products != l_btree;
            let collapse = products.len() == 1 && products.contains(&zero);
            pass(
                "the set is closed under products",
                format!(
                    "pairwise products give {} of {} members ({}{})",
                    products.len(),
                    l_set.len(),
                    if strict { "strict inclusion" } else { "equality" },
                    if collapse { "; all products vanish" } else { "" },
                ),
            )
        }
    });

    // Conjugation by invertibles of the unitalization preserves membership.
    let ext = alg.adjoin_unit();
    let ext_count = checked_power(p, ext.dim(), CONJUGATOR_ENUM_CAP);
    let (conjugators, conj_mode): (Vec<Vec<u64>>, String) = match ext_count {
        Ok(_) => {
            let all: Vec<Vec<u64>> = ElementIter::new(p, ext.dim())
                .filter(|w| invert(&ext, w).is_some())
                .collect();
            let label = format!("all {} invertibles", all.len());
            (all, label)
        }
        Err(_) => {
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            let mut picked = Vec::new();
            let mut attempts = 0;
            while picked.len() < SEEDED_CONJUGATORS && attempts < 50 * SEEDED_CONJUGATORS {
                attempts += 1;
                let w: Vec<u64> = (0..ext.dim()).map(|_| rng.gen_range(0..p)).collect();
                if invert(&ext, &w).is_some() {
                    picked.push(w);
                }
            }
            let label = format!("{} seeded invertibles", picked.len());
            (picked, label)
        }
    };
    let mut bad = None;
    for w in &conjugators {
        for a in &l_set {
            let conj = conjugate_in_unitalization(alg, w, a)?;
            if !is_in_left_set(alg, &conj) {
                bad = Some(format!(
                    "ω = {}, a = {}",
                    ext.render_element(w),
                    alg.render_element(a)
                ));
            }
        }
    }
    rows.push(match bad {
        Some(w) => fail(
            "conjugation preserves membership",
            format!("ω·a·ω⁻¹ left the set at {w}"),
        ),
        None => pass(
            "conjugation preserves membership",
            format!("checked against {conj_mode}"),
        ),
    });

    rows.push(skip(
        "the set is closed in the algebra",
        "topological statement; see the banner".into(),
    ));

    // Nonzero non-unit members are zero divisors: one of the two regular
    // representations on A is singular.
    let mut bad = None;
    let mut tested = 0;
    for a in &l_set {
        if *a == zero {
            continue;
        }
        if let Some(u) = alg.unit() {
            if a == u {
                continue;
            }
        }
        tested += 1;
        let left_singular = !alg.left_regular_matrix(a).nullspace().is_empty();
        let right_singular = !right_regular_matrix(alg, a).nullspace().is_empty();
        if !left_singular && !right_singular {
            bad = Some(alg.render_element(a));
        }
    }
    rows.push(match bad {
        Some(w) => fail(
            "nonzero non-unit members divide zero",
            format!("both regular representations of {w} are injective"),
        ),
        None => pass(
            "nonzero non-unit members divide zero",
            format!("{tested} members checked"),
        ),
    });

    // Consequences for a nice algebra: squares stabilize, and pairwise
    // products are exactly the idempotent members.
    let nice = l_set.iter().all(|a| {
        (0..d).all(|i| {
            let ax = alg.mul_el(a, &alg.basis_el(i));
            ax == alg.mul_el(&ax, a)
        })
    });
    if nice {
        let mut bad = None;
        for a in &l_set {
            if alg.power_el(a, 2) != alg.power_el(a, 3) {
                bad = Some(alg.render_element(a));
            }
        }
        let li: BTreeSet<Vec<u64>> = l_set
            .iter()
            .filter(|a| is_idempotent(alg, a))
            .cloned()
            .collect();
        rows.push(match (bad, products == li) {
            (Some(w), _) => fail(
                "nice consequences",
                format!("algebra is nice but a² ≠ a³ for a = {w}"),
            ),
            (None, false) => fail(
                "nice consequences",
                "algebra is nice but pairwise products differ from the idempotent members".into(),
            ),
            (None, true) => pass(
                "nice consequences",
                "a² = a³ on the set, and pairwise products equal the idempotent members".into(),
            ),
        });
    } else {
        rows.push(skip("nice consequences", "the algebra is not nice".into()));
    }

    // With all idempotents central, idempotent absorption is onto.
    if i_set.iter().all(|e| is_central(alg, e)) {
        let absorbed: BTreeSet<Vec<u64>> = l_set
            .iter()
            .flat_map(|a| i_set.iter().map(|e| alg.mul_el(a, e)))
            .collect();
        let i_btree: BTreeSet<Vec<u64>> = i_set.iter().cloned().collect();
        rows.push(if absorbed == i_btree {
            pass(
                "central idempotents are absorbed onto",
                format!("products cover all {} idempotents exactly", i_set.len()),
            )
        } else {
            fail(
                "central idempotents are absorbed onto",
                "idempotents are central but the products miss or exceed them".into(),
            )
        });
    } else {
        rows.push(skip(
            "central idempotents are absorbed onto",
            "some idempotent is not central".into(),
        ));
    }

    // The nilpotency collapse: nilpotent members, cube-zero members, the
    // linear ideal, and (in the finite-characteristic reading) the
    // quasinilpotent members all coincide.
    let collect = |set: SetKind| -> BTreeSet<Vec<u64>> {
        everything
            .iter()
            .filter(|a| is_member(alg, set, a))
            .cloned()
            .collect()
    };
    let nl: BTreeSet<Vec<u64>> = collect(SetKind::N)
        .intersection(&l_btree)
        .cloned()
        .collect();
    let n3l: BTreeSet<Vec<u64>> = collect(SetKind::N3)
        .intersection(&l_btree)
        .cloned()
        .collect();
    let np3 = collect(SetKind::NPrime3);
    let qnl: BTreeSet<Vec<u64>> = collect(SetKind::QN)
        .intersection(&l_btree)
        .cloned()
        .collect();
    rows.push(if nl == n3l && n3l == np3 && np3 == qnl {
        pass(
            "nilpotent members form the linear ideal",
            format!(
                "all four readings agree on {} elements (spectral reading via the \
                 characteristic polynomial)",
                np3.len()
            ),
        )
    } else {
        fail(
            "nilpotent members form the linear ideal",
            format!(
                "sizes N∩: {}, cube-zero∩: {}, ideal: {}, spectral∩: {}",
                nl.len(),
                n3l.len(),
                np3.len(),
                qnl.len()
            ),
        )
    });

    // Vanishing triple products make every element a member. (The converse
    // needs unbounded scalars; see the banner.)
    let cube_zero = (0..d).all(|i| {
        (0..d).all(|j| {
            let ij = alg.mul_el(&alg.basis_el(i), &alg.basis_el(j));
            (0..d).all(|k| alg.mul_el(&ij, &alg.basis_el(k)) == zero)
        })
    });
    rows.push(if cube_zero {
        if l_set.len() == everything.len() {
            pass(
                "triple-product collapse makes everything a member",
                format!("all {} elements are members", everything.len()),
            )
        } else {
            fail(
                "triple-product collapse makes everything a member",
                format!("only {} of {} elements are members", l_set.len(), everything.len()),
            )
        }
    } else {
        skip(
            "triple-product collapse makes everything a member",
            "some triple product is nonzero; the converse direction needs unbounded scalars \
             (see the banner)"
                .into(),
        )
    });

    // The linear ideal is trivial exactly when the left annihilator is.
    let left_ann: Vec<Vec<u64>> = everything
        .iter()
        .filter(|a| (0..d).all(|i| alg.mul_el(a, &alg.basis_el(i)) == zero))
        .cloned()
        .collect();
    let right_ann_count = everything
        .iter()
        .filter(|a| (0..d).all(|i| alg.mul_el(&alg.basis_el(i), a) == zero))
        .count();
    let ideal_trivial = np3.len() == 1;
    let left_trivial = left_ann.len() == 1;
    rows.push(if ideal_trivial == left_trivial {
        pass(
            "trivial ideal equals trivial left annihilator",
            format!(
                "ideal size {}, left annihilator size {}, right annihilator size {}",
                np3.len(),
                left_ann.len(),
                right_ann_count
            ),
        )
    } else {
        fail(
            "trivial ideal equals trivial left annihilator",
            format!(
                "ideal size {} but left annihilator size {}",
                np3.len(),
                left_ann.len()
            ),
        )
    });

    Ok(TheoremSuiteReport {
        algebra_name: alg.name().to_string(),
        modulus: p,
        rows,
        banner: "Closedness and arguments needing unbounded scalars are not asserted over \
                 finite coefficient fields; quasinilpotence is read through the \
                 characteristic polynomial of the regular representation."
            .into(),
    })
}

// ---------------------------------------------------------------------------
// The zoo
// ---------------------------------------------------------------------------

/// How to generate a batch of prime-field algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZooMode {
    /// Iterate all `p^(dim³)` structure-constant tables (dimension 2 only)
    /// and keep the associative ones.
    ExhaustiveTables,
    /// Rejection-sample associative tables, deterministically per seed.
    SeededSample { count: usize, seed: u64 },
}

/// A zoo request: small dimension, small prime, one of the two modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZooSpec {
    pub dim: usize,
    pub p: u64,
    pub mode: ZooMode,
}

impl ZooSpec {
    /// Parses `dim=2,p=2,exhaustive` or `dim=3,p=2,sample=100,seed=42`
    /// (seed defaults to 0).
    pub fn parse(s: &str) -> Result<ZooSpec, AlgebraError> {
        let mut dim = None;
        let mut p = None;
        let mut exhaustive = false;
        let mut count = None;
        let mut seed = 0u64;
        for part in s.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            if part == "exhaustive" {
                exhaustive = true;
                continue;
            }
            let (key, value) = part.split_once('=').ok_or_else(|| {
                AlgebraError::Invalid(format!("bad zoo spec fragment `{part}`"))
            })?;
            let parse_u64 = |v: &str| -> Result<u64, AlgebraError> {
                v.trim()
                    .parse()
                    .map_err(|_| AlgebraError::Invalid(format!("bad zoo spec number `{v}`")))
            };
            match key.trim() {
                "dim" => dim = Some(parse_u64(value)? as usize),
                "p" => p = Some(parse_u64(value)?),
                "sample" => count = Some(parse_u64(value)? as usize),
                "seed" => seed = parse_u64(value)?,
                other => {
                    return Err(AlgebraError::Invalid(format!(
                        "unknown zoo spec key `{other}`"
                    )))
                }
            }
        }
        let dim = dim.ok_or_else(|| AlgebraError::Invalid("zoo spec needs dim=".into()))?;
        let p = p.ok_or_else(|| AlgebraError::Invalid("zoo spec needs p=".into()))?;
        let mode = match (exhaustive, count) {
            (true, None) => ZooMode::ExhaustiveTables,
            (false, Some(count)) => ZooMode::SeededSample { count, seed },
            (true, Some(_)) => {
                return Err(AlgebraError::Invalid(
                    "zoo spec cannot be both exhaustive and sampled".into(),
                ))
            }
            (false, None) => {
                return Err(AlgebraError::Invalid(
                    "zoo spec needs either `exhaustive` or `sample=N`".into(),
                ))
            }
        };
        Ok(ZooSpec { dim, p, mode })
    }

    fn validate(&self) -> Result<PrimeField, AlgebraError> {
        if !(1..=3).contains(&self.dim) {
            return Err(AlgebraError::SizeLimit(format!(
                "zoo dimension {} out of the supported range 1..=3",
                self.dim
            )));
        }
        if ![2, 3, 5].contains(&self.p) {
            return Err(AlgebraError::BadScalar(format!(
                "zoo prime {} not in {{2, 3, 5}}",
                self.p
            )));
        }
        PrimeField::new(self.p)
    }
}

fn table_from_tuple(dim: usize, tuple: &[u64]) -> Vec<(usize, usize, usize, u64)> {
    let mut table = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let c = tuple[(i * dim + j) * dim + k];
                if c != 0 {
                    table.push((i, j, k, c));
                }
            }
        }
    }
    table
}

fn zoo_labels(dim: usize) -> Vec<String> {
    (0..dim).map(|i| format!("e{i}")).collect()
}

/// Generates the requested batch of associative prime-field algebras.
/// Exhaustive mode iterates every structure-constant table and keeps those
/// that build (no isomorphism classing: duplicates are harmless for
/// per-algebra checking). Sampled mode rejection-samples tables and is
/// deterministic per seed.
pub fn zoo_generate(spec: &ZooSpec) -> Result<Vec<Algebra<PrimeField>>, AlgebraError> {
    let f = spec.validate()?;
    let d = spec.dim;
    match spec.mode {
        ZooMode::ExhaustiveTables => {
            checked_power(spec.p, d * d * d, TABLE_CAP)?;
            if d != 2 {
                return Err(AlgebraError::Invalid(
                    "exhaustive table enumeration is limited to dimension 2".into(),
                ));
            }
            let mut out = Vec::new();
            for tuple in ElementIter::new(spec.p, d * d * d) {
                let table = table_from_tuple(d, &tuple);
                let name = format!("zoo(dim={},p={},#{})", d, spec.p, out.len());
                if let Ok(alg) = Algebra::from_table(f.clone(), name, zoo_labels(d), &table) {
                    out.push(alg);
                }
            }
            Ok(out)
        }
        ZooMode::SeededSample { count, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = Vec::new();
            let mut attempts = 0usize;
            let mut tuple = vec![0u64; d * d * d];
            // One uniform draw covers the whole tuple: p^(dim³) ≤ 5^27 < 2^63.
            let span = checked_power(spec.p, d * d * d, u64::MAX >> 1)
                .expect("table space fits in a u64 draw");
            while out.len() < count {
                attempts += 1;
                if attempts > 2_000_000 {
                    return Err(AlgebraError::Invalid(format!(
                        "rejection sampling found only {} associative tables in {attempts} draws",
                        out.len()
                    )));
                }
                let mut draw = rng.gen_range(0..span);
                for c in tuple.iter_mut() {
                    *c = draw % spec.p;
                    draw /= spec.p;
                }
                // Fast pre-filter; the builder still validates every
                // accepted table through its own associativity check.
                if !table_is_associative_by_operators(spec.p, d, &tuple) {
                    continue;
                }
                let table = table_from_tuple(d, &tuple);
                let name = format!("zoo(dim={},p={},#{})", d, spec.p, out.len());
                match Algebra::from_table(f.clone(), name, zoo_labels(d), &table) {
                    Ok(alg) => out.push(alg),
                    Err(e) => unreachable!("associativity cross-check disagreement: {e}"),
                }
            }
            Ok(out)
        }
    }
}

/// Second, independent associativity test, used to cross-check the builder's
/// verdict: a table is associative exactly when composing the
/// left-multiplication operators of two basis vectors matches the operator
/// of their product, for every basis pair. Works on raw structure constants
/// (`constants[(i·dim + j)·dim + k]` = coefficient of `e_k` in `e_i·e_j`).
pub fn table_is_associative_by_operators(p: u64, dim: usize, constants: &[u64]) -> bool {
    assert_eq!(constants.len(), dim * dim * dim);
    let c = |i: usize, j: usize, k: usize| constants[(i * dim + j) * dim + k] % p;
    // (L_i)[r][c] = coefficient of e_r in e_i·e_c.
    let l_op = |i: usize, r: usize, col: usize| c(i, col, r);
    for i in 0..dim {
        for j in 0..dim {
            for r in 0..dim {
                for col in 0..dim {
                    let composed: u64 = (0..dim)
                        .map(|m| l_op(i, r, m) * l_op(j, m, col))
                        .sum::<u64>()
                        % p;
                    let direct: u64 = (0..dim).map(|k| c(i, j, k) * l_op(k, r, col)).sum::<u64>()
                        % p;
                    if composed != direct {
                        return false;
                    }
                }
            }
        }
    }
    true
}

// ---------------------------------------------------------------------------
// Agreement with the exact rational descriptions
// ---------------------------------------------------------------------------

/// The GF(p) point set of an exact rational set description: points reduced
/// mod p, families evaluated at every residue, subspaces at every parameter
/// tuple. Errors when some denominator is not invertible mod p.
pub fn rational_description_points_mod_p(
    desc: &ElementSetDescription<Rationals>,
    f: &PrimeField,
) -> Result<BTreeSet<Vec<u64>>, AlgebraError> {
    let p = f.modulus();
    let reduce = |v: &[BigRational]| -> Result<Vec<u64>, AlgebraError> {
        v.iter().map(|x| f.reduce_rational(x)).collect()
    };
    let mut out = BTreeSet::new();
    for pt in &desc.points {
        out.insert(reduce(pt)?);
    }
    for fam in &desc.families {
        for t in 0..p {
            let v = fam.eval(&BigRational::from_integer(t.into()));
            out.insert(reduce(&v)?);
        }
    }
    for sub in &desc.subspaces {
        for params in ElementIter::new(p, sub.space_dim()) {
            let mut v = sub.base.clone();
            for (j, dir) in sub.directions.iter().enumerate() {
                let t = BigRational::from_integer(params[j].into());
                for (vi, di) in v.iter_mut().zip(dir) {
                    *vi += di * &t;
                }
            }
            out.insert(reduce(&v)?);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// The two readings of the classical absorbing-idempotent example
// ---------------------------------------------------------------------------

/// What one printed reading of the classical non-central absorbing
/// idempotent example does when tested: whether the table is associative at
/// all and, if so, whether e = E11 maps the idempotent set into itself from
/// the left (e·I ⊆ I) or from the right (I·e ⊆ I) while staying off-center.
#[derive(Debug, Clone)]
pub struct AbsorptionReading {
    pub spec: String,
    pub buildable: bool,
    /// e·I ⊆ I (the absorption as printed).
    pub absorbs: Option<bool>,
    /// I·e ⊆ I (the mirrored side).
    pub mirror_absorbs: Option<bool>,
    pub e_central: Option<bool>,
    pub detail: String,
}

/// Tests both printed readings of the classical example exhaustively over
/// GF(p) — the triangular reading and the literal entry pattern — and
/// reports which, if either, actually exhibits a non-central idempotent
/// with e·I ⊆ I. The mirrored check I·e ⊆ I is recorded alongside, and no
/// guess is made about which reading was intended.
pub fn absorbing_idempotent_readings(
    f: &PrimeField,
) -> Result<Vec<AbsorptionReading>, AlgebraError> {
    use crate::algebra::BuiltinSpec;
    let mut out = Vec::new();
    for spec in ["zemanek_upper", "zemanek_literal"] {
        let built = BuiltinSpec::parse(spec)
            .expect("builtin spec names")
            .build(f.clone());
        match built {
            Err(e) => out.push(AbsorptionReading {
                spec: spec.into(),
                buildable: false,
                absorbs: None,
                mirror_absorbs: None,
                e_central: None,
                detail: format!("not testable: {e}"),
            }),
            Ok(alg) => {
                let e = alg.basis_el(0);
                assert!(is_idempotent(&alg, &e), "E11 must be idempotent");
                let idempotents: Vec<Vec<u64>> = elements_of(&alg)?
                    .filter(|a| is_idempotent(&alg, a))
                    .collect();
                let left_witness = idempotents
                    .iter()
                    .find(|x| !is_idempotent(&alg, &alg.mul_el(&e, x)));
                let absorbs = left_witness.is_none();
                let mirror_absorbs = idempotents
                    .iter()
                    .all(|x| is_idempotent(&alg, &alg.mul_el(x, &e)));
                let central = is_central(&alg, &e);
                let verdict = match (absorbs, mirror_absorbs, central) {
                    (true, _, false) => {
                        "exhibits a non-central idempotent absorbing the idempotent set from \
                         the left"
                            .to_string()
                    }
                    (false, true, false) => {
                        let f_el = left_witness.expect("absorption failed");
                        format!(
                            "left absorption fails (e·f = {} for f = {} is not idempotent); \
                             only the mirrored right absorption holds",
                            alg.render_element(&alg.mul_el(&e, f_el)),
                            alg.render_element(f_el)
                        )
                    }
                    _ => "does not exhibit the claimed behaviour".to_string(),
                };
                out.push(AbsorptionReading {
                    spec: spec.into(),
                    buildable: true,
                    absorbs: Some(absorbs),
                    mirror_absorbs: Some(mirror_absorbs),
                    e_central: Some(central),
                    detail: format!(
                        "{} idempotents over GF({}); {verdict}",
                        idempotents.len(),
                        f.modulus()
                    ),
                });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BuiltinSpec;
    use crate::endo::describe_set_rational;

    fn build_q(spec: &str) -> Algebra<Rationals> {
        BuiltinSpec::parse(spec).unwrap().build(Rationals).unwrap()
    }

    fn build_p(spec: &str, p: u64) -> Algebra<PrimeField> {
        BuiltinSpec::parse(spec)
            .unwrap()
            .build(PrimeField::new(p).unwrap())
            .unwrap()
    }

    #[test]
    fn iterates_lexicographically_and_completely() {
        let all: Vec<Vec<u64>> = ElementIter::new(3, 2).collect();
        assert_eq!(all.len(), 9);
        assert_eq!(all[0], vec![0, 0]);
        assert_eq!(all[1], vec![0, 1]);
        assert_eq!(all[3], vec![1, 0]);
        assert_eq!(all[8], vec![2, 2]);
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted, all, "ascending and duplicate-free");
        assert_eq!(ElementIter::new(5, 0).count(), 1, "empty tuple once");
    }

    #[test]
    fn power_cap_enforced() {
        assert_eq!(checked_power(2, 10, ENUM_CAP).unwrap(), 1024);
        assert_eq!(checked_power(5, 8, TABLE_CAP).unwrap(), 390_625);
        assert!(matches!(
            checked_power(2, 30, ENUM_CAP),
            Err(AlgebraError::SizeLimit(_))
        ));
        assert!(matches!(
            checked_power(2, 27, TABLE_CAP),
            Err(AlgebraError::SizeLimit(_))
        ));
    }

    #[test]
    fn predicate_enumeration_matches_the_worked_example() {
        let lt2 = build_p("lower_triangular(2)", 2);
        let l = enumerate_predicate_set(&lt2, OraclePredicate::Set(SetKind::L)).unwrap();
        assert_eq!(
            l,
            vec![
                vec![0, 0, 0],
                vec![1, 0, 0],
                vec![1, 0, 1],
                vec![1, 1, 0],
            ],
            "zero, E11, the unit, E11+E21"
        );
        let alias = enumerate_predicate_set(&lt2, OraclePredicate::NiceHypothesis).unwrap();
        assert_eq!(alias, l);

        let lt2_3 = build_p("lower_triangular(2)", 3);
        let l3 = enumerate_predicate_set(&lt2_3, OraclePredicate::Set(SetKind::L)).unwrap();
        assert_eq!(l3.len(), 5);

        let zp2 = build_p("zero_product(2)", 2);
        let all = enumerate_predicate_set(&zp2, OraclePredicate::Set(SetKind::L)).unwrap();
        assert_eq!(all.len(), 4, "with all products zero everything belongs");

        let mf2 = build_p("matrix_full(2)", 2);
        let idem = enumerate_predicate_set(&mf2, OraclePredicate::Set(SetKind::I)).unwrap();
        assert_eq!(idem.len(), 8);
        assert!(OraclePredicate::parse("NP3").is_ok());
        assert!(OraclePredicate::parse("nice-hypothesis").is_ok());
        assert!(OraclePredicate::parse("bogus").is_err());
    }

    #[test]
    fn theorem_suite_passes_on_the_fixtures() {
        for (spec, p) in [
            ("lower_triangular(2)", 2),
            ("lower_triangular(2)", 3),
            ("zero_product(2)", 2),
            ("zero_product(3)", 2),
            ("truncated_polynomial(2)", 2),
            ("truncated_polynomial(3)", 3),
            ("diagonal(2)", 5),
            ("matrix_full(2)", 2),
        ] {
            let alg = build_p(spec, p);
            let report = exhaustive_theorem_suite(&alg).unwrap();
            assert_eq!(report.rows.len(), 11, "{spec}");
            assert!(
                report.all_pass(),
                "{spec} over GF({p}): {:#?}",
                report
                    .rows
                    .iter()
                    .filter(|r| r.status == SuiteStatus::Fail)
                    .collect::<Vec<_>>()
            );
            assert!(!report.banner.is_empty());
        }
    }

    #[test]
    fn suite_details_record_the_interesting_cases() {
        // With every product zero the member products collapse to the origin.
        let zp2 = build_p("zero_product(2)", 2);
        let report = exhaustive_theorem_suite(&zp2).unwrap();
        let closure = &report.rows[2];
        assert_eq!(closure.item, "the set is closed under products");
        assert!(closure.detail.contains("all products vanish"), "{}", closure.detail);
        let collapse = &report.rows[9];
        assert_eq!(collapse.status, SuiteStatus::Pass, "cube-zero premise holds");

        // Closedness is never claimed over a finite field.
        assert!(report
            .rows
            .iter()
            .any(|r| r.status == SuiteStatus::Skipped && r.detail.contains("banner")));

        // A non-nice algebra skips the nice consequences.
        let tp3 = build_p("truncated_polynomial(3)", 3);
        let report = exhaustive_theorem_suite(&tp3).unwrap();
        assert!(report.all_pass());
        assert!(report
            .rows
            .iter()
            .any(|r| r.status == SuiteStatus::Skipped && r.detail.contains("not nice")));
    }

    #[test]
    fn suite_handles_one_sided_annihilators() {
        // e·e = e, f·e = f: the left annihilator is trivial (so the triple
        // annihilator is too) while the right annihilator is not. A
        // symmetric reading of the triviality criterion would fail here.
        let f = PrimeField::new(2).unwrap();
        let alg = Algebra::from_table(
            f,
            "left-identity-like",
            vec!["e".into(), "f".into()],
            &[(0, 0, 0, 1), (1, 0, 1, 1)],
        )
        .unwrap();
        let report = exhaustive_theorem_suite(&alg).unwrap();
        assert!(report.all_pass(), "{:#?}", report.rows);
        let ann = report
            .rows
            .iter()
            .find(|r| r.item == "trivial ideal equals trivial left annihilator")
            .unwrap();
        assert!(
            ann.detail.contains("left annihilator size 1")
                && ann.detail.contains("right annihilator size 2"),
            "{}",
            ann.detail
        );
        let np3 = enumerate_predicate_set(&alg, OraclePredicate::Set(SetKind::NPrime3)).unwrap();
        assert_eq!(np3, vec![vec![0, 0]], "triple annihilator is trivial");
    }

    #[test]
    fn suite_refuses_oversized_algebras() {
        // 5^7 > 2^12 elements is beyond the pair-looping budget.
        let f = PrimeField::new(5).unwrap();
        let alg = Algebra::from_table(
            f,
            "big-zero",
            (0..7).map(|i| format!("g{i}")).collect(),
            &[],
        )
        .unwrap();
        assert!(matches!(
            exhaustive_theorem_suite(&alg),
            Err(AlgebraError::SizeLimit(_))
        ));
    }

    #[test]
    fn zoo_spec_parsing_and_limits() {
        assert_eq!(
            ZooSpec::parse("dim=2,p=2,exhaustive").unwrap(),
            ZooSpec {
                dim: 2,
                p: 2,
                mode: ZooMode::ExhaustiveTables
            }
        );
        assert_eq!(
            ZooSpec::parse("dim=3, p=2, sample=100, seed=42").unwrap(),
            ZooSpec {
                dim: 3,
                p: 2,
                mode: ZooMode::SeededSample {
                    count: 100,
                    seed: 42
                }
            }
        );
        assert!(ZooSpec::parse("dim=2,p=2").is_err(), "mode is required");
        assert!(ZooSpec::parse("dim=2,p=2,exhaustive,sample=3").is_err());
        assert!(ZooSpec::parse("dim=2,p=2,exhaustive,frobs=1").is_err());

        let err = zoo_generate(&ZooSpec::parse("dim=3,p=2,exhaustive").unwrap()).unwrap_err();
        assert!(matches!(err, AlgebraError::SizeLimit(_)), "2^27 tables");
        let err = zoo_generate(&ZooSpec {
            dim: 1,
            p: 2,
            mode: ZooMode::ExhaustiveTables,
        })
        .unwrap_err();
        assert!(matches!(err, AlgebraError::Invalid(_)));
        let err = zoo_generate(&ZooSpec {
            dim: 2,
            p: 7,
            mode: ZooMode::ExhaustiveTables,
        })
        .unwrap_err();
        assert!(matches!(err, AlgebraError::BadScalar(_)));
        let err = zoo_generate(&ZooSpec {
            dim: 4,
            p: 2,
            mode: ZooMode::SeededSample { count: 1, seed: 0 },
        })
        .unwrap_err();
        assert!(matches!(err, AlgebraError::SizeLimit(_)));
    }

    #[test]
    fn zoo_exhaustive_tables_over_gf2() {
        let algs = zoo_generate(&ZooSpec::parse("dim=2,p=2,exhaustive").unwrap()).unwrap();

        // Cross-check the builder's associativity verdict, table by table,
        // against the operator-composition identity.
        let mut independent = 0usize;
        for tuple in ElementIter::new(2, 8) {
            if table_is_associative_by_operators(2, 2, &tuple) {
                independent += 1;
            }
        }
        assert_eq!(algs.len(), independent);
        assert_eq!(algs.len(), 28, "frozen count of associative tables");
    }

    #[test]
    fn zoo_algebras_all_pass_the_suite() {
        let algs = zoo_generate(&ZooSpec::parse("dim=2,p=2,exhaustive").unwrap()).unwrap();
        for alg in &algs {
            let report = exhaustive_theorem_suite(alg).unwrap();
            assert!(
                report.all_pass(),
                "{}: {:#?}",
                alg.name(),
                report
                    .rows
                    .iter()
                    .filter(|r| r.status == SuiteStatus::Fail)
                    .collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn zoo_sampling_is_deterministic() {
        let spec = ZooSpec::parse("dim=3,p=2,sample=8,seed=42").unwrap();
        let once = zoo_generate(&spec).unwrap();
        let twice = zoo_generate(&spec).unwrap();
        assert_eq!(once.len(), 8);
        let tables = |algs: &[Algebra<PrimeField>]| -> Vec<Vec<Vec<u64>>> {
            algs.iter()
                .map(|alg| {
                    (0..alg.dim())
                        .flat_map(|i| {
                            (0..alg.dim())
                                .map(move |j| (i, j))
                        })
                        .map(|(i, j)| alg.mul_el(&alg.basis_el(i), &alg.basis_el(j)))
                        .collect()
                })
                .collect()
        };
        assert_eq!(tables(&once), tables(&twice));

        // Every sampled table also satisfies the independent associativity check.
        for alg in &once {
            let d = alg.dim();
            let mut constants = vec![0u64; d * d * d];
            for i in 0..d {
                for j in 0..d {
                    let prod = alg.mul_el(&alg.basis_el(i), &alg.basis_el(j));
                    for k in 0..d {
                        constants[(i * d + j) * d + k] = prod[k];
                    }
                }
            }
            assert!(table_is_associative_by_operators(2, d, &constants));
        }

        let other = zoo_generate(&ZooSpec::parse("dim=3,p=2,sample=8,seed=43").unwrap()).unwrap();
        assert_ne!(tables(&once), tables(&other), "seed changes the draw");
    }

    #[test]
    fn rational_descriptions_reduce_to_the_enumerated_sets() {
        let cases: &[(&str, SetKind, &[u64])] = &[
            ("lower_triangular(2)", SetKind::L, &[2, 3, 5]),
            ("lower_triangular(2)", SetKind::R, &[3]),
            ("lower_triangular(2)", SetKind::NPrime3, &[2, 5]),
            ("lower_triangular(2)", SetKind::Q, &[3]),
            ("zero_product(2)", SetKind::L, &[2, 5]),
            ("truncated_polynomial(2)", SetKind::L, &[2, 3]),
            ("truncated_polynomial(3)", SetKind::L, &[3]),
            ("truncated_polynomial(3)", SetKind::NPrime3, &[2]),
            ("diagonal(2)", SetKind::L, &[2, 5]),
            ("diagonal(2)", SetKind::Z, &[3]),
            ("diagonal(3)", SetKind::L, &[2]),
        ];
        for (spec, set, primes) in cases {
            let rational = build_q(spec);
            let desc = describe_set_rational(&rational, *set);
            assert!(desc.complete, "{spec}/{set:?} should solve exactly");
            for &p in primes.iter() {
                let f = PrimeField::new(p).unwrap();
                let reduced = rational_description_points_mod_p(&desc, &f).unwrap();
                let modular = build_p(spec, p);
                let enumerated: BTreeSet<Vec<u64>> =
                    enumerate_predicate_set(&modular, OraclePredicate::Set(*set))
                        .unwrap()
                        .into_iter()
                        .collect();
                assert_eq!(reduced, enumerated, "{spec} {} mod {p}", set.label());
            }
        }
    }

    #[test]
    fn neither_printed_reading_absorbs_from_the_left() {
        let f = PrimeField::new(3).unwrap();
        let readings = absorbing_idempotent_readings(&f).unwrap();
        assert_eq!(readings.len(), 2);

        // The genuinely upper-triangular reading is an algebra, but E11
        // sends the idempotent E22 + E12 to the non-idempotent E12: left
        // absorption fails as printed, and only the mirror side holds.
        let upper = &readings[0];
        assert_eq!(upper.spec, "zemanek_upper");
        assert!(upper.buildable);
        assert_eq!(upper.absorbs, Some(false));
        assert_eq!(upper.mirror_absorbs, Some(true));
        assert_eq!(upper.e_central, Some(false));
        assert!(upper.detail.contains("mirrored right absorption"), "{}", upper.detail);

        // The literal entry pattern is not closed under matrix products, so
        // its truncated table is not associative.
        let literal = &readings[1];
        assert_eq!(literal.spec, "zemanek_literal");
        assert!(!literal.buildable);
        assert_eq!(literal.absorbs, None);
        assert!(literal.detail.contains("not testable"), "{}", literal.detail);

        // The behaviour both readings miss is real: in the lower-triangular
        // worked example E11 is non-central and does absorb the idempotent
        // set from the left.
        let lt2 = build_p("lower_triangular(2)", 3);
        let e = lt2.basis_el(0);
        assert!(!is_central(&lt2, &e));
        let idempotents: Vec<Vec<u64>> = elements_of(&lt2)
            .unwrap()
            .filter(|a| is_idempotent(&lt2, a))
            .collect();
        assert_eq!(idempotents.len(), 8);
        assert!(idempotents
            .iter()
            .all(|x| is_idempotent(&lt2, &lt2.mul_el(&e, x))));
    }
}
