//! The nilpotent hierarchy: triple-annihilator and one-sided annihilator
//! subspaces, per-element nilpotency verdicts, and the set-equality batteries
//! tying them to the endomorphic-left set.

use num::{BigRational, Zero};

use crate::algebra::Algebra;
use crate::charpoly::charpoly_faddeev;
use crate::endo::{
    describe_set_rational, is_in_left_set, is_member, nil_index as element_nil_index,
};
use crate::error::AlgebraError;
use crate::linalg::Mat;
use crate::mpoly::MPoly;
use crate::oracle::elements_of;
use crate::poly::Poly;
use crate::scalar::{Field, PrimeField, Rationals};
use crate::sets::{
    lift_to_poly, mul_mpoly_coords, mul_poly_coords, AffineSubspace, ElementSetDescription,
    ParametricElement, SetKind,
};
use crate::solve::{solve_system, SolutionComponent, SolveOptions};

/// The subspace {a : a·x·y = 0 for all x, y} — by bilinearity, the exact
/// nullspace of the stacked linear maps a ↦ coordinates of a·e_i·e_j. Always
/// a linear subspace and a two-sided ideal.
pub fn nprime3_subspace<F: Field>(alg: &Algebra<F>) -> AffineSubspace<F> {
    let d = alg.dim();
    let mut rows = Vec::with_capacity(d * d * d);
    for i in 0..d {
        for j in 0..d {
            // column m of this block: coordinates of e_m · e_i · e_j
            let products: Vec<_> = (0..d)
                .map(|m| {
                    alg.mul_el(
                        &alg.mul_el(&alg.basis_el(m), &alg.basis_el(i)),
                        &alg.basis_el(j),
                    )
                })
                .collect();
            for k in 0..d {
                rows.push(products.iter().map(|p| p[k].clone()).collect());
            }
        }
    }
    nullspace_subspace(alg, rows)
}

/// The mirrored subspace {a : x·y·a = 0 for all x, y}; trivially inside the
/// endomorphic-right set the same way the left version sits inside L.
pub fn nprime3_mirror_subspace<F: Field>(alg: &Algebra<F>) -> AffineSubspace<F> {
    let d = alg.dim();
    let mut rows = Vec::with_capacity(d * d * d);
    for i in 0..d {
        for j in 0..d {
            let products: Vec<_> = (0..d)
                .map(|m| {
                    alg.mul_el(
                        &alg.mul_el(&alg.basis_el(i), &alg.basis_el(j)),
                        &alg.basis_el(m),
                    )
                })
                .collect();
            for k in 0..d {
                rows.push(products.iter().map(|p| p[k].clone()).collect());
            }
        }
    }
    nullspace_subspace(alg, rows)
}

/// Left and right annihilator subspaces: ({a : a·x = 0 ∀x}, {a : x·a = 0 ∀x}).
/// The algebra is "without order" exactly when both are trivial.
pub fn annihilator_subspaces<F: Field>(
    alg: &Algebra<F>,
) -> (AffineSubspace<F>, AffineSubspace<F>) {
    let d = alg.dim();
    let mut left_rows = Vec::with_capacity(d * d);
    let mut right_rows = Vec::with_capacity(d * d);
    for i in 0..d {
        let left_products: Vec<_> = (0..d)
            .map(|m| alg.mul_el(&alg.basis_el(m), &alg.basis_el(i)))
            .collect();
        let right_products: Vec<_> = (0..d)
            .map(|m| alg.mul_el(&alg.basis_el(i), &alg.basis_el(m)))
            .collect();
        for k in 0..d {
            left_rows.push(left_products.iter().map(|p| p[k].clone()).collect());
            right_rows.push(right_products.iter().map(|p| p[k].clone()).collect());
        }
    }
    (
        nullspace_subspace(alg, left_rows),
        nullspace_subspace(alg, right_rows),
    )
}

/// Is A without order (no nonzero one-sided annihilator)?
pub fn is_without_order<F: Field>(alg: &Algebra<F>) -> bool {
    let (left, right) = annihilator_subspaces(alg);
    left.space_dim() == 0 && right.space_dim() == 0
}

/// The two-sided annihilator {c : c·x = x·c = 0 ∀x}: elements that kill the
/// whole algebra from both sides at once. A nonzero member rules out isolated
/// points in the left set (its translates a + tc never leave the set), which
/// is strictly weaker than having a one-sided annihilator.
pub fn two_sided_annihilator_subspace<F: Field>(alg: &Algebra<F>) -> AffineSubspace<F> {
    let d = alg.dim();
    let mut rows = Vec::with_capacity(2 * d * d);
    for i in 0..d {
        let left_products: Vec<_> = (0..d)
            .map(|m| alg.mul_el(&alg.basis_el(m), &alg.basis_el(i)))
            .collect();
        let right_products: Vec<_> = (0..d)
            .map(|m| alg.mul_el(&alg.basis_el(i), &alg.basis_el(m)))
            .collect();
        for k in 0..d {
            rows.push(left_products.iter().map(|p| p[k].clone()).collect());
            rows.push(right_products.iter().map(|p| p[k].clone()).collect());
        }
    }
    nullspace_subspace(alg, rows)
}

fn nullspace_subspace<F: Field>(alg: &Algebra<F>, rows: Vec<Vec<F::El>>) -> AffineSubspace<F> {
    let m = Mat::from_rows(alg.f().clone(), rows).expect("uniform row length");
    AffineSubspace {
        base: alg.zero_el(),
        directions: m.nullspace(),
    }
}

// ---------------------------------------------------------------------------
// Per-element verdicts
// ---------------------------------------------------------------------------

/// Where one element sits in the nilpotent hierarchy. The flags always
/// satisfy the containment chain
/// `in_nprime3 ⇒ in_n3 ⇒ in_n ⇒ in_qn`
/// (and at finite dimension the last arrow is an equality).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct NilpotencyVerdict {
    /// a³ = 0.
    pub in_n3: bool,
    /// a^k = 0 for some k ≤ dim + 1.
    pub in_n: bool,
    /// Least such k, if any; the zero element reports 1.
    pub nil_index: Option<u32>,
    /// Spectrum {0} in the unitalization, decided by the characteristic
    /// polynomial of the regular representation.
    pub in_qn: bool,
    /// a·x·y = 0 for all x, y.
    pub in_nprime3: bool,
}

/// Classifies one element against every nilpotency set at once.
pub fn nil_verdict<F: Field>(alg: &Algebra<F>, a: &[F::El]) -> NilpotencyVerdict {
    let index = element_nil_index(alg, a);
    let verdict = NilpotencyVerdict {
        in_n3: is_member(alg, SetKind::N3, a),
        in_n: index.is_some(),
        nil_index: index,
        in_qn: is_member(alg, SetKind::QN, a),
        in_nprime3: is_member(alg, SetKind::NPrime3, a),
    };
    assert!(
        (!verdict.in_nprime3 || verdict.in_n3)
            && (!verdict.in_n3 || verdict.in_n)
            && (!verdict.in_n || verdict.in_qn),
        "nilpotency chain violated for {}: {verdict:?}",
        alg.render_element(a)
    );
    verdict
}

// ---------------------------------------------------------------------------
// Set-equality battery: the four sets coincide inside L
// ---------------------------------------------------------------------------

/// Outcome of checking `N ∩ L = N₃ ∩ L = N'₃ = QN ∩ L` on one algebra.
/// A surviving counterexample signals an implementation bug, not new
/// mathematics, so callers usually just assert [`holds`](Self::holds).
#[derive(Clone, Debug)]
pub struct Theorem41Report {
    pub counterexample: Option<String>,
    pub checked_points: usize,
    pub checked_families: usize,
    pub checked_subspaces: usize,
    /// Size of the agreed set when it was computed by finite enumeration.
    pub agreed_set_size: Option<usize>,
    pub notes: Vec<String>,
}

impl Theorem41Report {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Exhaustive battery over a prime field: every element of the algebra is
/// classified and the four set memberships are compared pointwise.
pub fn theorem_4_1_battery_prime(
    alg: &Algebra<PrimeField>,
) -> Result<Theorem41Report, AlgebraError> {
    let mut report = Theorem41Report {
        counterexample: None,
        checked_points: 0,
        checked_families: 0,
        checked_subspaces: 0,
        agreed_set_size: Some(0),
        notes: Vec::new(),
    };
    for a in elements_of(alg)? {
        report.checked_points += 1;
        let in_l = is_in_left_set(alg, &a);
        let v = nil_verdict(alg, &a);
        let quadruple = [v.in_nprime3, v.in_n3 && in_l, v.in_n && in_l, v.in_qn && in_l];
        if quadruple.iter().any(|&b| b != quadruple[0]) {
            report.counterexample = Some(format!(
                "{}: NP3 {}, N3∩L {}, N∩L {}, QN∩L {}",
                alg.render_element(&a),
                quadruple[0],
                quadruple[1],
                quadruple[2],
                quadruple[3]
            ));
            report.agreed_set_size = None;
            return Ok(report);
        }
        if quadruple[0] {
            *report.agreed_set_size.as_mut().unwrap() += 1;
        }
    }
    Ok(report)
}

/// Exact battery over the rationals, working part-by-part through a complete
/// description of L: isolated points are classified directly; for families
/// the exact rational parameter sets cut out by each nilpotency condition
/// are compared; subspace parts are compared as solution sets of the
/// substituted polynomial systems, both containments checked symbolically.
///
/// The spectral condition is exact on points and families (characteristic
/// polynomial with polynomial entries); on subspace parts it is cross-checked
/// pointwise on a parameter grid against the power condition.
pub fn theorem_4_1_battery_rational(
    alg: &Algebra<Rationals>,
) -> Result<Theorem41Report, AlgebraError> {
    let l_desc = describe_set_rational(alg, SetKind::L);
    if !l_desc.complete {
        return Err(AlgebraError::IncompleteDescription(format!(
            "L description of {} is partial; the set-equality battery needs all of L",
            alg.name()
        )));
    }
    let mut report = Theorem41Report {
        counterexample: None,
        checked_points: 0,
        checked_families: 0,
        checked_subspaces: 0,
        agreed_set_size: None,
        notes: Vec::new(),
    };

    // The triple annihilator itself: spot-check that representative members
    // carry all four memberships (and sit inside L).
    let np3 = nprime3_subspace(alg);
    for a in subspace_probe_points(alg, &np3) {
        let v = nil_verdict(alg, &a);
        if !(v.in_nprime3 && v.in_n3 && v.in_n && v.in_qn && is_in_left_set(alg, &a)) {
            report.counterexample = Some(format!(
                "annihilator element {} missing from the chain: {v:?}",
                alg.render_element(&a)
            ));
            return Ok(report);
        }
    }

    for p in &l_desc.points {
        report.checked_points += 1;
        let v = nil_verdict(alg, p);
        let quadruple = [v.in_nprime3, v.in_n3, v.in_n, v.in_qn];
        if quadruple.iter().any(|&b| b != quadruple[0]) {
            report.counterexample = Some(format!(
                "{}: NP3 {}, N3 {}, N {}, QN {}",
                alg.render_element(p),
                quadruple[0],
                quadruple[1],
                quadruple[2],
                quadruple[3]
            ));
            return Ok(report);
        }
    }

    for fam in &l_desc.families {
        report.checked_families += 1;
        if let Some(cex) = family_battery(alg, fam)? {
            report.counterexample = Some(cex);
            return Ok(report);
        }
    }

    for sub in &l_desc.subspaces {
        report.checked_subspaces += 1;
        if let Some(cex) = subspace_battery(alg, sub, &mut report.notes)? {
            report.counterexample = Some(cex);
            return Ok(report);
        }
    }
    Ok(report)
}

/// The rational parameter values at which every polynomial in the list
/// vanishes: the whole line, or a finite (possibly empty) set of rationals.
enum ParamSet {
    All,
    Finite(Vec<BigRational>),
}

impl ParamSet {
    fn of(polys: impl IntoIterator<Item = Poly>) -> Result<ParamSet, AlgebraError> {
        let mut gcd = Poly::zero();
        for p in polys {
            gcd = gcd.gcd(&p);
        }
        if gcd.is_zero() {
            return Ok(ParamSet::All);
        }
        let roots = gcd.rational_roots().ok_or_else(|| {
            AlgebraError::IncompleteDescription(
                "coefficient too large to factor while comparing parameter sets".into(),
            )
        })?;
        Ok(ParamSet::Finite(roots.into_iter().map(|(r, _)| r).collect()))
    }

    fn same(&self, other: &ParamSet) -> bool {
        match (self, other) {
            (ParamSet::All, ParamSet::All) => true,
            (ParamSet::Finite(a), ParamSet::Finite(b)) => a == b,
            _ => false,
        }
    }

    fn render(&self) -> String {
        match self {
            ParamSet::All => "all parameters".to_string(),
            ParamSet::Finite(rs) => format!(
                "{{{}}}",
                rs.iter()
                    .map(|r| r.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        }
    }
}

/// Compares, along one family, the exact parameter sets cut out by the four
/// nilpotency conditions. All four are computed independently — the spectral
/// one from a characteristic polynomial with polynomial entries.
fn family_battery(
    alg: &Algebra<Rationals>,
    fam: &ParametricElement,
) -> Result<Option<String>, AlgebraError> {
    let d = alg.dim();
    let f = fam.coords().to_vec();
    let basis: Vec<Vec<Poly>> = (0..d).map(|i| lift_to_poly(&alg.basis_el(i))).collect();

    let mut np3_polys = Vec::new();
    for i in 0..d {
        let fxi = mul_poly_coords(alg, &f, &basis[i]);
        for j in 0..d {
            np3_polys.extend(mul_poly_coords(alg, &fxi, &basis[j]));
        }
    }
    let np3_set = ParamSet::of(np3_polys)?;

    let cube = mul_poly_coords(alg, &mul_poly_coords(alg, &f, &f), &f);
    let n3_set = ParamSet::of(cube)?;

    let mut power = f.clone();
    for _ in 0..d {
        power = mul_poly_coords(alg, &power, &f);
    }
    let n_set = ParamSet::of(power)?;

    let ext = alg.adjoin_unit();
    let mut f_ext = f.clone();
    f_ext.push(Poly::zero());
    let n = ext.dim();
    let cols: Vec<Vec<Poly>> = (0..n)
        .map(|j| mul_poly_coords(&ext, &f_ext, &lift_to_poly(&ext.basis_el(j))))
        .collect();
    let charpoly = charpoly_faddeev(n, |i, j| cols[j][i].clone());
    let qn_set = ParamSet::of(charpoly[..n].iter().cloned())?;

    for (name, set) in [("N3", &n3_set), ("N", &n_set), ("QN", &qn_set)] {
        if !np3_set.same(set) {
            return Ok(Some(format!(
                "family {}: NP3 holds at {} but {name} holds at {}",
                fam.render(alg),
                np3_set.render(),
                set.render()
            )));
        }
    }
    Ok(None)
}

/// Restricts the system parts to one affine subspace of L and compares the
/// cut-out solution sets, both containments verified symbolically.
fn subspace_battery(
    alg: &Algebra<Rationals>,
    sub: &AffineSubspace<Rationals>,
    notes: &mut Vec<String>,
) -> Result<Option<String>, AlgebraError> {
    let d = alg.dim();
    let k = sub.directions.len();
    // Coordinates of base + Σ t_m dir_m as polynomials in the parameters.
    let exprs: Vec<MPoly> = (0..d)
        .map(|v| {
            let mut e = MPoly::constant(k, sub.base[v].clone());
            for (m, dir) in sub.directions.iter().enumerate() {
                e = e.add(&MPoly::var(k, m).scale(&dir[v]));
            }
            e
        })
        .collect();
    let basis: Vec<Vec<MPoly>> = (0..d)
        .map(|i| {
            alg.basis_el(i)
                .iter()
                .map(|c| MPoly::constant(k, c.clone()))
                .collect()
        })
        .collect();

    // Linear system: the annihilator condition restricted to the part.
    let mut np3_sys = Vec::new();
    for i in 0..d {
        let fxi = mul_mpoly_coords(alg, &exprs, &basis[i]);
        for j in 0..d {
            np3_sys.extend(mul_mpoly_coords(alg, &fxi, &basis[j]));
        }
    }
    np3_sys.retain(|e| !e.is_zero());

    // Power systems restricted to the part.
    let cube_sys: Vec<MPoly> = {
        let sq = mul_mpoly_coords(alg, &exprs, &exprs);
        mul_mpoly_coords(alg, &sq, &exprs)
            .into_iter()
            .filter(|e| !e.is_zero())
            .collect()
    };
    let mut power = exprs.clone();
    for _ in 0..d {
        power = mul_mpoly_coords(alg, &power, &exprs);
    }
    let n_sys: Vec<MPoly> = power.into_iter().filter(|e| !e.is_zero()).collect();

    // Containment 1: annihilator slice satisfies the power conditions
    // identically (solve the linear system, substitute its components).
    let np3_solution = solve_system(k, &np3_sys, &SolveOptions::default());
    if !np3_solution.complete {
        return Err(AlgebraError::IncompleteDescription(
            "linear annihilator slice did not solve completely".into(),
        ));
    }
    for comp in &np3_solution.components {
        for sys in [&cube_sys, &n_sys] {
            if let Some(eq) = component_violates(comp, sys) {
                return Ok(Some(format!(
                    "annihilator slice of a subspace part fails a power condition: {eq}"
                )));
            }
        }
    }

    // Containment 2: solutions of each power condition land in the
    // annihilator slice.
    for sys in [&cube_sys, &n_sys] {
        let sol = solve_system(k, sys, &SolveOptions::default());
        if !sol.complete {
            return Err(AlgebraError::IncompleteDescription(
                "power condition on a subspace part did not solve completely".into(),
            ));
        }
        for comp in &sol.components {
            if let Some(eq) = component_violates(comp, &np3_sys) {
                return Ok(Some(format!(
                    "nilpotent slice of a subspace part escapes the annihilator: {eq}"
                )));
            }
        }
    }

    // Spectral cross-check on a parameter grid.
    let grid: Vec<BigRational> = [-2i64, -1, 0, 1, 2, 3]
        .iter()
        .map(|&n| BigRational::from_integer(n.into()))
        .collect();
    let mut assignment = vec![BigRational::from_integer(0.into()); k];
    let mut checked = 0usize;
    let combos = grid.len().pow(k.min(3) as u32);
    for idx in 0..combos {
        let mut rem = idx;
        for slot in assignment.iter_mut().take(k.min(3)) {
            *slot = grid[rem % grid.len()].clone();
            rem /= grid.len();
        }
        let point: Vec<BigRational> = exprs.iter().map(|e| e.eval(&assignment)).collect();
        let v = nil_verdict(alg, &point);
        if v.in_qn != v.in_n {
            return Ok(Some(format!(
                "spectral and power verdicts disagree at {}",
                alg.render_element(&point)
            )));
        }
        checked += 1;
    }
    if k > 3 {
        notes.push(format!(
            "spectral grid varied only 3 of {k} subspace parameters ({checked} points)"
        ));
    }
    Ok(None)
}

/// First equation of the system the component fails to satisfy identically,
/// if any, rendered for the report.
fn component_violates(comp: &SolutionComponent, system: &[MPoly]) -> Option<String> {
    match comp {
        SolutionComponent::Point(p) => system
            .iter()
            .find(|eq| !eq.eval(p).is_zero())
            .map(|eq| format!("{eq:?} at point {p:?}")),
        SolutionComponent::Family(coords) => system
            .iter()
            .find(|eq| !eq.eval_poly(coords).is_zero())
            .map(|eq| format!("{eq:?} along a curve")),
        SolutionComponent::Subspace { base, directions } => {
            let m = directions.len();
            let exprs: Vec<MPoly> = (0..base.len())
                .map(|v| {
                    let mut e = MPoly::constant(m, base[v].clone());
                    for (t, dir) in directions.iter().enumerate() {
                        e = e.add(&MPoly::var(m, t).scale(&dir[v]));
                    }
                    e
                })
                .collect();
            system
                .iter()
                .find(|eq| !eq.eval_mpoly(&exprs).is_zero())
                .map(|eq| format!("{eq:?} on a subspace"))
        }
    }
}

/// Representative points of an affine subspace: base, base ± each direction,
/// and the base plus the sum of all directions.
fn subspace_probe_points(
    alg: &Algebra<Rationals>,
    sub: &AffineSubspace<Rationals>,
) -> Vec<Vec<BigRational>> {
    let mut out = vec![sub.base.clone()];
    let mut total = sub.base.clone();
    for dir in &sub.directions {
        out.push(alg.add_el(&sub.base, dir));
        out.push(alg.sub_el(&sub.base, dir));
        total = alg.add_el(&total, dir);
    }
    out.push(total);
    out
}

// ---------------------------------------------------------------------------
// Whole-algebra checks
// ---------------------------------------------------------------------------

/// Do all triple products of basis elements vanish (A³ = 0)?
pub fn triple_products_vanish<F: Field>(alg: &Algebra<F>) -> bool {
    let d = alg.dim();
    for i in 0..d {
        for j in 0..d {
            let ij = alg.basis_product(i, j).to_vec();
            if alg.is_zero_el(&ij) {
                continue;
            }
            for k in 0..d {
                if !alg.is_zero_el(&alg.mul_el(&ij, &alg.basis_el(k))) {
                    return false;
                }
            }
        }
    }
    true
}

/// Is every element endomorphic-left? Decided by `A³ = 0`, then cross-checked
/// against direct membership: when the cube vanishes, basis elements, pairwise
/// sums, and a seeded sample must all test into L; when it does not vanish
/// (over the rationals, where the equivalence is a theorem) the same pool must
/// contain a non-member, and that witness is demanded. Over a prime field the
/// converse direction is advisory only — a small scalar field genuinely can
/// make every element endomorphic-left without killing the cube — so no
/// witness is required there.
pub fn endomorphic_left_algebra_check<F: Field>(alg: &Algebra<F>) -> bool {
    use crate::scalar::ScalarRegime;
    let a3_zero = triple_products_vanish(alg);
    let pool = membership_probe_pool(alg);
    if a3_zero {
        for a in &pool {
            assert!(
                is_in_left_set(alg, a),
                "cube of {} vanishes but {} tested out of L",
                alg.name(),
                alg.render_element(a)
            );
        }
    } else if alg.f().regime() == ScalarRegime::ExactRational {
        let witness = pool.iter().find(|a| !is_in_left_set(alg, a));
        assert!(
            witness.is_some(),
            "cube of {} is nonzero yet no sampled element escapes L",
            alg.name()
        );
    }
    a3_zero
}

/// Basis elements, pairwise sums, and a seeded pseudo-random sample — the
/// element pool the whole-algebra checks probe with.
fn membership_probe_pool<F: Field>(alg: &Algebra<F>) -> Vec<Vec<F::El>> {
    use rand::{Rng, SeedableRng};
    let d = alg.dim();
    let mut pool = vec![alg.zero_el()];
    for i in 0..d {
        pool.push(alg.basis_el(i));
        for j in i + 1..d {
            pool.push(alg.add_el(&alg.basis_el(i), &alg.basis_el(j)));
        }
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
    for _ in 0..32 {
        let a: Vec<F::El> = (0..d)
            .map(|_| alg.f().from_i64(rng.gen_range(-9i64..=9)))
            .collect();
        pool.push(a);
    }
    pool
}

/// The equivalences tying annihilators to the triple-product kernels:
/// `N'₃(A) = {0}` exactly when the left annihilator is trivial, the mirrored
/// set `{a : x·y·a = 0}` is trivial exactly when the right annihilator is,
/// and "without order" is the conjunction. Returns whether the algebra is
/// without order; panics if any of the provable equivalences fails (that
/// would be an implementation bug). Also asserts the triviality corollary:
/// no algebra of positive dimension is simultaneously without order and
/// cube-zero.
pub fn theorem_4_3_check<F: Field>(alg: &Algebra<F>) -> bool {
    let np3_trivial = nprime3_subspace(alg).space_dim() == 0;
    let mirror_trivial = nprime3_mirror_subspace(alg).space_dim() == 0;
    let (left_ann, right_ann) = annihilator_subspaces(alg);
    let left_trivial = left_ann.space_dim() == 0;
    let right_trivial = right_ann.space_dim() == 0;

    assert_eq!(
        np3_trivial, left_trivial,
        "triple-annihilator/left-annihilator equivalence failed on {}",
        alg.name()
    );
    assert_eq!(
        mirror_trivial, right_trivial,
        "mirror/right-annihilator equivalence failed on {}",
        alg.name()
    );
    let without_order = left_trivial && right_trivial;
    assert_eq!(without_order, is_without_order(alg));
    assert!(
        !(without_order && triple_products_vanish(alg)),
        "{} claims to be both without order and cube-zero at positive dimension",
        alg.name()
    );
    without_order
}

/// The descriptions of the linear nilpotency sets, packaged for reports.
pub fn nprime3_description(
    alg: &Algebra<Rationals>,
) -> ElementSetDescription<Rationals> {
    describe_set_rational(alg, SetKind::NPrime3)
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
    fn annihilator_and_triple_kernel_shapes() {
        let lt2 = build("lower_triangular(2)");
        assert_eq!(nprime3_subspace(&lt2).space_dim(), 0);
        let (l, r) = annihilator_subspaces(&lt2);
        assert_eq!((l.space_dim(), r.space_dim()), (0, 0));
        assert!(is_without_order(&lt2));

        let zp2 = build("zero_product(2)");
        assert_eq!(nprime3_subspace(&zp2).space_dim(), 2);
        let (l, r) = annihilator_subspaces(&zp2);
        assert_eq!((l.space_dim(), r.space_dim()), (2, 2));
        assert!(!is_without_order(&zp2));

        let tp2 = build("truncated_polynomial(2)");
        assert_eq!(nprime3_subspace(&tp2).space_dim(), 2);

        // The sum pins both annihilators to the zero-product summand.
        let sum = build("direct_sum(lower_triangular(2),zero_product(1))");
        let (l, r) = annihilator_subspaces(&sum);
        assert_eq!((l.space_dim(), r.space_dim()), (1, 1));
        assert!(l.contains(sum.f(), &[q(0), q(0), q(0), q(1)]));
    }

    #[test]
    fn verdicts_match_hand_calculations() {
        let lt2 = build("lower_triangular(2)");
        // E21 squares to zero but does not annihilate triple products.
        let e21 = vec![q(0), q(1), q(0)];
        let v = nil_verdict(&lt2, &e21);
        assert!(v.in_n3 && v.in_n && v.in_qn && !v.in_nprime3);
        assert_eq!(v.nil_index, Some(2));
        // The unit is nowhere in the hierarchy.
        let v = nil_verdict(&lt2, lt2.unit().unwrap());
        assert!(!v.in_n3 && !v.in_n && !v.in_qn && !v.in_nprime3);
        assert_eq!(v.nil_index, None);
        // t in the square-truncated algebra annihilates every triple product.
        let tp2 = build("truncated_polynomial(2)");
        let v = nil_verdict(&tp2, &tp2.basis_el(0));
        assert!(v.in_n3 && v.in_nprime3);
        assert_eq!(v.nil_index, Some(3));
        // Zero reports index 1.
        assert_eq!(nil_verdict(&tp2, &tp2.zero_el()).nil_index, Some(1));
    }

    #[test]
    fn set_equality_battery_over_the_rationals() {
        for spec in [
            "lower_triangular(2)",
            "matrix_full(2)",
            "diagonal(2)",
            "zero_product(2)",
            "zero_product(4)",
            "truncated_polynomial(2)",
            "truncated_polynomial(3)",
            "truncated_polynomial(4)",
        ] {
            let alg = build(spec);
            let report = theorem_4_1_battery_rational(&alg).unwrap();
            assert!(report.holds(), "{spec}: {:?}", report.counterexample);
            assert!(
                report.checked_points
                    + report.checked_families
                    + report.checked_subspaces
                    > 0
            );
        }
    }

    #[test]
    fn set_equality_battery_demands_a_complete_description() {
        let big = build("direct_sum(lower_triangular(2),zero_product(2))");
        assert!(matches!(
            theorem_4_1_battery_rational(&big),
            Err(AlgebraError::IncompleteDescription(_))
        ));
    }

    #[test]
    fn set_equality_battery_over_prime_fields() {
        let gf3 = PrimeField::new(3).unwrap();
        let lt2 = BuiltinSpec::parse("lower_triangular(2)")
            .unwrap()
            .build(gf3)
            .unwrap();
        let report = theorem_4_1_battery_prime(&lt2).unwrap();
        assert!(report.holds());
        assert_eq!(report.checked_points, 27);
        assert_eq!(report.agreed_set_size, Some(1)); // just 0

        let gf2 = PrimeField::new(2).unwrap();
        let zp2 = BuiltinSpec::parse("zero_product(2)")
            .unwrap()
            .build(gf2)
            .unwrap();
        let report = theorem_4_1_battery_prime(&zp2).unwrap();
        assert!(report.holds());
        assert_eq!(report.checked_points, 4);
        assert_eq!(report.agreed_set_size, Some(4)); // the whole algebra
    }

    #[test]
    fn cube_zero_detection_and_membership_cross_check() {
        assert!(endomorphic_left_algebra_check(&build("truncated_polynomial(2)")));
        assert!(endomorphic_left_algebra_check(&build("zero_product(3)")));
        assert!(!endomorphic_left_algebra_check(&build("lower_triangular(2)")));
        assert!(!endomorphic_left_algebra_check(&build("truncated_polynomial(3)")));
        // Prime-field regime: same decisions on these algebras.
        let gf2 = PrimeField::new(2).unwrap();
        let zp = BuiltinSpec::parse("zero_product(2)").unwrap().build(gf2).unwrap();
        assert!(endomorphic_left_algebra_check(&zp));
    }

    #[test]
    fn order_equivalences_across_fixtures() {
        assert!(theorem_4_3_check(&build("lower_triangular(2)")));
        assert!(theorem_4_3_check(&build("matrix_full(2)")));
        assert!(!theorem_4_3_check(&build("zero_product(2)")));
        assert!(!theorem_4_3_check(&build("truncated_polynomial(2)")));
        assert!(!theorem_4_3_check(
            &build("direct_sum(lower_triangular(2),zero_product(1))")
        ));
    }

    #[test]
    fn one_sided_annihilators_divorce_the_two_kernels() {
        // a·a = a, b·a = b, other products zero: b annihilates on the right
        // only, so the right-sided kernel is nonzero while the left-sided
        // triple kernel is trivial.
        let alg = Algebra::from_table(
            Rationals,
            "one-sided",
            vec!["a".into(), "b".into()],
            &[(0, 0, 0, q(1)), (1, 0, 1, q(1))],
        )
        .unwrap();
        assert_eq!(nprime3_subspace(&alg).space_dim(), 0);
        assert_eq!(nprime3_mirror_subspace(&alg).space_dim(), 1);
        let (l, r) = annihilator_subspaces(&alg);
        assert_eq!(l.space_dim(), 0);
        assert_eq!(r.space_dim(), 1);
        assert!(!theorem_4_3_check(&alg)); // has order, and the check agrees
    }

    #[test]
    fn nice_algebras_collapse_the_suffix_to_two() {
        // Where the membership identity forces ax = axa, the double and
        // triple annihilation conditions coincide: N'₂ (= left annihilator)
        // equals N'₃, and endomorphic-left elements satisfy a² = a³.
        for spec in ["lower_triangular(2)", "zero_product(2)", "zero_product(3)"] {
            let alg = build(spec);
            let (left_ann, _) = annihilator_subspaces(&alg);
            let np3 = nprime3_subspace(&alg);
            assert_eq!(left_ann.space_dim(), np3.space_dim(), "{spec}");
            for dir in &np3.directions {
                assert!(left_ann.contains(alg.f(), dir), "{spec}");
            }
        }
        // Contrast: a non-nice algebra where they differ.
        let tp2 = build("truncated_polynomial(2)");
        let (left_ann, _) = annihilator_subspaces(&tp2);
        assert_eq!(left_ann.space_dim(), 1); // span{t²}
        assert_eq!(nprime3_subspace(&tp2).space_dim(), 2); // everything
    }
}
