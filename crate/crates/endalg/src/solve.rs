//! Exact enumeration of rational solution sets of small polynomial systems.
//!
//! Membership in the structured element sets (endomorphic-left, idempotent,
//! cube-zero, ...) is a finite system of polynomial equations in the
//! coordinates of a generic element. This module solves such systems over the
//! rationals by repeated substitution and case splitting, reporting the
//! solution set as a union of isolated points, one-parameter polynomial
//! families, and affine subspaces.
//!
//! The solver is deliberately a small move set rather than a general Groebner
//! engine: the systems coming out of low-dimensional structure algebras
//! collapse under linear substitution, univariate root splitting, monomial
//! factoring, and an occasional quadratic with polynomial-square
//! discriminant. When a branch resists every move the outcome is flagged
//! incomplete rather than guessed at, and splits that would need irrational
//! algebraic numbers keep the rational part and leave a note.
//!
//! Every component the solver emits is re-checked symbolically against the
//! original system before it is returned, so a bug in the move logic shows up
//! as a loud failure instead of a wrong description.

use num::{BigRational, Signed, Zero};
use std::collections::BTreeSet;

use crate::mpoly::{MPoly, Mono};
use crate::poly::Poly;

/// Tuning knobs for [`solve_system`].
#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Upper bound on case-split branches explored before giving up.
    pub max_branches: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { max_branches: 4096 }
    }
}

/// One piece of a solution set, in the coordinates of the ambient system.
#[derive(Debug, Clone, PartialEq)]
pub enum SolutionComponent {
    /// A single rational point.
    Point(Vec<BigRational>),
    /// A curve parametrized polynomially by one rational parameter; entry `i`
    /// is the `i`-th coordinate as a polynomial in the parameter.
    Family(Vec<Poly>),
    /// An affine subspace `base + span(directions)` of dimension >= 2.
    Subspace {
        base: Vec<BigRational>,
        directions: Vec<Vec<BigRational>>,
    },
}

/// Result of [`solve_system`]: the components found, whether every branch
/// resolved exactly, and any caveats worth surfacing.
#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub components: Vec<SolutionComponent>,
    /// True when the union of `components` is provably the whole rational
    /// solution set.
    pub complete: bool,
    pub notes: Vec<String>,
}

const NOTE_IRRATIONAL: &str =
    "a univariate constraint has irrational real roots; only rational solutions are enumerated";
const NOTE_STUCK: &str =
    "a case branch resisted every solver move; the description may omit solutions";
const NOTE_NONLINEAR_MULTI: &str =
    "a resolved branch has two or more free variables with nonlinear coupling; it was dropped";
const NOTE_BUDGET: &str = "branch budget exceeded before the case analysis finished";

/// A partially solved system: `subs[v]` is the expression (in currently free
/// variables) a bound variable has been eliminated by, and `eqs` are the
/// remaining equations, which mention free variables only.
#[derive(Debug, Clone)]
struct Branch {
    subs: Vec<Option<MPoly>>,
    eqs: Vec<MPoly>,
}

impl Branch {
    fn new(nvars: usize, equations: &[MPoly]) -> Self {
        Branch {
            subs: vec![None; nvars],
            eqs: equations.to_vec(),
        }
    }

    /// Eliminates variable `v` by `rhs` everywhere. `rhs` must mention only
    /// variables currently free and not `v` itself, which keeps every stored
    /// substitution fully resolved at all times.
    fn bind(&mut self, v: usize, rhs: MPoly) {
        debug_assert!(self.subs[v].is_none(), "variable bound twice");
        debug_assert_eq!(rhs.degree_in(v), 0, "substitution mentions its own variable");
        for eq in &mut self.eqs {
            *eq = eq.substitute(v, &rhs);
        }
        for s in self.subs.iter_mut().flatten() {
            *s = s.substitute(v, &rhs);
        }
        self.subs[v] = Some(rhs);
    }

    /// Drops trivial equations, normalizes scale, and removes duplicates.
    /// Returns false when the branch is inconsistent (no solutions).
    fn clean(&mut self) -> bool {
        let mut seen: BTreeSet<MPoly> = BTreeSet::new();
        let mut out = Vec::new();
        for eq in &self.eqs {
            if eq.is_zero() {
                continue;
            }
            if eq.is_constant() {
                return false;
            }
            let n = eq.normalized();
            if seen.insert(n.clone()) {
                out.push(n);
            }
        }
        self.eqs = out;
        true
    }

    fn nvars(&self) -> usize {
        self.subs.len()
    }
}

/// Enumerates the rational solutions of `equations` (polynomials in `nvars`
/// variables, all equal to zero). See the module docs for the component
/// vocabulary and the completeness contract.
pub fn solve_system(nvars: usize, equations: &[MPoly], options: &SolveOptions) -> SolveOutcome {
    for eq in equations {
        assert_eq!(eq.nvars(), nvars, "equation in wrong variable space");
    }
    let mut notes: BTreeSet<String> = BTreeSet::new();
    let mut complete = true;
    let mut points: Vec<Vec<BigRational>> = Vec::new();
    let mut families: Vec<Vec<Poly>> = Vec::new();
    let mut subspaces: Vec<(Vec<BigRational>, Vec<Vec<BigRational>>)> = Vec::new();

    let mut stack = vec![Branch::new(nvars, equations)];
    let mut processed = 0usize;
    while let Some(mut branch) = stack.pop() {
        processed += 1;
        if processed > options.max_branches {
            complete = false;
            notes.insert(NOTE_BUDGET.to_string());
            break;
        }
        if !branch.clean() {
            continue;
        }
        if branch.eqs.is_empty() {
            match resolve(&branch) {
                Some(component) => {
                    verify_component(&component, equations);
                    match component {
                        SolutionComponent::Point(p) => points.push(p),
                        SolutionComponent::Family(f) => families.push(f),
                        SolutionComponent::Subspace { base, directions } => {
                            subspaces.push((base, directions))
                        }
                    }
                }
                None => {
                    complete = false;
                    notes.insert(NOTE_NONLINEAR_MULTI.to_string());
                }
            }
            continue;
        }
        match apply_move(&branch, &mut notes) {
            Some(children) => stack.extend(children),
            None => {
                complete = false;
                notes.insert(NOTE_STUCK.to_string());
            }
        }
    }

    points.sort();
    points.dedup();
    let mut unique_families: Vec<Vec<Poly>> = Vec::new();
    for f in families {
        if !unique_families.contains(&f) {
            unique_families.push(f);
        }
    }
    let mut unique_subspaces: Vec<(Vec<BigRational>, Vec<Vec<BigRational>>)> = Vec::new();
    for s in subspaces {
        if !unique_subspaces.contains(&s) {
            unique_subspaces.push(s);
        }
    }

    let mut components: Vec<SolutionComponent> =
        points.into_iter().map(SolutionComponent::Point).collect();
    components.extend(unique_families.into_iter().map(SolutionComponent::Family));
    components.extend(
        unique_subspaces
            .into_iter()
            .map(|(base, directions)| SolutionComponent::Subspace { base, directions }),
    );

    SolveOutcome {
        components,
        complete,
        notes: notes.into_iter().collect(),
    }
}

/// Applies the highest-priority applicable move, returning the child
/// branches whose union of solution sets equals the branch's. `None` means
/// no move applies.
fn apply_move(branch: &Branch, notes: &mut BTreeSet<String>) -> Option<Vec<Branch>> {
    let nvars = branch.nvars();

    // Fully linear equation: substitute its lowest-index variable.
    for (i, eq) in branch.eqs.iter().enumerate() {
        if eq.total_degree() == 1 {
            let v = eq.vars_present()[0];
            let cs = eq.coeffs_in(v);
            let c = cs[1].constant_value().expect("linear coefficient");
            let rhs = cs[0].scale(&-c.recip());
            let mut child = branch.clone();
            child.eqs.remove(i);
            child.bind(v, rhs);
            return Some(vec![child]);
        }
    }

    // Linear in some variable with a constant (hence invertible) coefficient.
    for (i, eq) in branch.eqs.iter().enumerate() {
        for v in eq.vars_present() {
            if eq.degree_in(v) != 1 {
                continue;
            }
            let cs = eq.coeffs_in(v);
            if let Some(c) = cs[1].constant_value() {
                let rhs = cs[0].scale(&-c.recip());
                let mut child = branch.clone();
                child.eqs.remove(i);
                child.bind(v, rhs);
                return Some(vec![child]);
            }
        }
    }

    // Univariate equation: split on its rational roots. Complete over the
    // rationals; Sturm counting flags when the real picture is bigger.
    for (i, eq) in branch.eqs.iter().enumerate() {
        if eq.vars_present().len() != 1 {
            continue;
        }
        let (var, poly) = eq.as_univariate().expect("one variable present");
        let v = var.expect("nonconstant");
        let Some(roots) = poly.rational_roots() else {
            // Coefficients exceed the factoring cap; try another equation.
            continue;
        };
        if poly.count_real_roots().is_some_and(|n| n > roots.len()) {
            notes.insert(NOTE_IRRATIONAL.to_string());
        }
        let mut children = Vec::new();
        for (root, _multiplicity) in roots {
            let mut child = branch.clone();
            child.eqs.remove(i);
            child.bind(v, MPoly::constant(nvars, root));
            children.push(child);
        }
        return Some(children);
    }

    // Same-signed sum of even pure powers: every variable involved is zero
    // (or, with a constant term of the same sign, no solution at all).
    'candidates: for (i, eq) in branch.eqs.iter().enumerate() {
        let mut sign_pos: Option<bool> = None;
        let mut has_constant_term = false;
        let mut vars: BTreeSet<usize> = BTreeSet::new();
        for (m, c) in eq.terms() {
            let pos = c.is_positive();
            if *sign_pos.get_or_insert(pos) != pos {
                continue 'candidates;
            }
            let nonzero: Vec<(usize, u32)> = m
                .iter()
                .enumerate()
                .filter(|&(_, &e)| e > 0)
                .map(|(j, &e)| (j, e))
                .collect();
            match nonzero.as_slice() {
                [] => has_constant_term = true,
                [(j, e)] if e % 2 == 0 => {
                    vars.insert(*j);
                }
                _ => continue 'candidates,
            }
        }
        if has_constant_term {
            // Strictly signed for every real assignment: inconsistent.
            return Some(vec![]);
        }
        let mut child = branch.clone();
        child.eqs.remove(i);
        for v in vars {
            child.bind(v, MPoly::zero(nvars));
        }
        return Some(vec![child]);
    }

    // Common monomial factor: one branch per vanishing variable plus the
    // divided equation. The union covers the solution set exactly (overlaps
    // are deduplicated later).
    for (i, eq) in branch.eqs.iter().enumerate() {
        let cm = eq.common_monomial();
        if cm.iter().all(|&e| e == 0) {
            continue;
        }
        let mut children = Vec::new();
        for (v, &e) in cm.iter().enumerate() {
            if e > 0 {
                let mut child = branch.clone();
                child.eqs[i] = MPoly::var(nvars, v);
                children.push(child);
            }
        }
        let mut child = branch.clone();
        child.eqs[i] = eq.divide_monomial(&cm);
        children.push(child);
        return Some(children);
    }

    // Quadratic in one variable with constant leading coefficient: usable
    // when the discriminant is a polynomial square (exact factorization) or a
    // constant non-square (no rational root for that variable at all).
    for (i, eq) in branch.eqs.iter().enumerate() {
        for v in eq.vars_present() {
            if eq.degree_in(v) != 2 {
                continue;
            }
            let cs = eq.coeffs_in(v);
            let Some(a) = cs[2].constant_value() else {
                continue;
            };
            let four_a = BigRational::from_integer(4.into()) * &a;
            let disc = cs[1].mul(&cs[1]).sub(&cs[0].scale(&four_a));
            match mpoly_sqrt(&disc) {
                Some(s) => {
                    let inv_2a = (BigRational::from_integer(2.into()) * &a).recip();
                    let minus_b = cs[1].neg();
                    let mut rhss = vec![minus_b.add(&s).scale(&inv_2a)];
                    if !s.is_zero() {
                        rhss.push(minus_b.sub(&s).scale(&inv_2a));
                    }
                    let mut children = Vec::new();
                    for rhs in rhss {
                        let mut child = branch.clone();
                        child.eqs.remove(i);
                        child.bind(v, rhs);
                        children.push(child);
                    }
                    return Some(children);
                }
                None if disc.is_constant() => {
                    // Constant non-square discriminant: no rational value of
                    // the variable works, whatever the other coordinates.
                    let d = disc.constant_value().expect("constant");
                    if d.is_positive() {
                        notes.insert(NOTE_IRRATIONAL.to_string());
                    }
                    return Some(vec![]);
                }
                None => continue,
            }
        }
    }

    None
}

/// Classifies a fully solved branch (no equations left) into a component.
/// Returns `None` only for two-or-more free variables with nonlinear
/// dependence, which this solver does not represent.
fn resolve(branch: &Branch) -> Option<SolutionComponent> {
    let nvars = branch.nvars();
    let free: Vec<usize> = (0..nvars).filter(|&v| branch.subs[v].is_none()).collect();
    let exprs: Vec<MPoly> = (0..nvars)
        .map(|v| match &branch.subs[v] {
            Some(rhs) => rhs.clone(),
            None => MPoly::var(nvars, v),
        })
        .collect();

    match free.len() {
        0 => {
            let point = exprs
                .iter()
                .map(|e| e.constant_value().expect("all variables bound"))
                .collect();
            Some(SolutionComponent::Point(point))
        }
        1 => {
            let k = free[0];
            let coords = exprs
                .iter()
                .map(|e| {
                    let (var, poly) = e.as_univariate().expect("single free variable");
                    debug_assert!(var.is_none() || var == Some(k));
                    poly
                })
                .collect();
            Some(SolutionComponent::Family(coords))
        }
        _ => {
            if exprs.iter().any(|e| e.total_degree() > 1) {
                return None;
            }
            let zeros = vec![BigRational::zero(); nvars];
            let base: Vec<BigRational> = exprs.iter().map(|e| e.eval(&zeros)).collect();
            let mut directions = Vec::new();
            for &k in &free {
                let mut unit = zeros.clone();
                unit[k] = BigRational::from_integer(1.into());
                let dir: Vec<BigRational> = exprs
                    .iter()
                    .zip(&base)
                    .map(|(e, b)| e.eval(&unit) - b)
                    .collect();
                directions.push(dir);
            }
            Some(SolutionComponent::Subspace { base, directions })
        }
    }
}

/// Symbolically checks a component against the original system; a failure
/// here is a solver bug, not bad input.
fn verify_component(component: &SolutionComponent, equations: &[MPoly]) {
    for eq in equations {
        let ok = match component {
            SolutionComponent::Point(p) => eq.eval(p).is_zero(),
            SolutionComponent::Family(coords) => eq.eval_poly(coords).is_zero(),
            SolutionComponent::Subspace { base, directions } => {
                let nparams = directions.len();
                let coord_exprs: Vec<MPoly> = base
                    .iter()
                    .enumerate()
                    .map(|(v, b)| {
                        let mut e = MPoly::constant(nparams, b.clone());
                        for (k, dir) in directions.iter().enumerate() {
                            e = e.add(&MPoly::var(nparams, k).scale(&dir[v]));
                        }
                        e
                    })
                    .collect();
                eq.eval_mpoly(&coord_exprs).is_zero()
            }
        };
        assert!(
            ok,
            "internal solver error: emitted component fails the input system"
        );
    }
}

fn rational_sqrt(c: &BigRational) -> Option<BigRational> {
    if c.is_negative() {
        return None;
    }
    if c.is_zero() {
        return Some(BigRational::zero());
    }
    let sn = c.numer().sqrt();
    let sd = c.denom().sqrt();
    if &(&sn * &sn) == c.numer() && &(&sd * &sd) == c.denom() {
        Some(BigRational::new(sn, sd))
    } else {
        None
    }
}

fn mono_term(nvars: usize, mono: &Mono, c: BigRational) -> MPoly {
    let mut m = MPoly::constant(nvars, c);
    for (i, &e) in mono.iter().enumerate() {
        if e > 0 {
            m = m.mul(&MPoly::var(nvars, i).pow(e));
        }
    }
    m
}

/// Exact polynomial square root (positive leading coefficient), or `None`
/// when the input is not a square of a rational-coefficient polynomial.
fn mpoly_sqrt(d: &MPoly) -> Option<MPoly> {
    if d.is_zero() {
        return Some(MPoly::zero(d.nvars()));
    }
    let nvars = d.nvars();
    // Lexicographically largest monomial; lex order respects products, so a
    // square's lead is the square of its root's lead.
    let (lead_mono, lead_coeff) = d.terms().next_back().map(|(m, c)| (m.clone(), c.clone()))?;
    if lead_mono.iter().any(|&e| e % 2 != 0) {
        return None;
    }
    let half: Mono = lead_mono.iter().map(|&e| e / 2).collect();
    let half_coeff = rational_sqrt(&lead_coeff)?;
    let two_lead = &half_coeff * BigRational::from_integer(2.into());

    let mut root = mono_term(nvars, &half, half_coeff);
    let max_iter = 4 * d.num_terms() + 8;
    for _ in 0..max_iter {
        let r = d.sub(&root.mul(&root));
        if r.is_zero() {
            return Some(root);
        }
        let (rm, rc) = r.terms().next_back().map(|(m, c)| (m.clone(), c.clone()))?;
        let tm: Option<Mono> = rm
            .iter()
            .zip(&half)
            .map(|(&a, &b)| a.checked_sub(b))
            .collect();
        let tm = tm?;
        root = root.add(&mono_term(nvars, &tm, rc / &two_lead));
    }
    None
}
