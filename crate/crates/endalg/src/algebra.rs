//! Finite-dimensional associative algebras presented by structure constants.
//!
//! An [`Algebra`] is a basis `e_0..e_{d-1}` together with the coordinates of
//! every basis product `e_i e_j`. Associativity is validated eagerly on all
//! basis triples, so a constructed value is always a genuine associative
//! algebra. Elements are plain coordinate vectors over the algebra's field.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::AlgebraError;
use crate::linalg::Mat;
use crate::scalar::Field;

static NEXT_ALGEBRA_ID: AtomicU64 = AtomicU64::new(1);

/// Identity of a constructed algebra, used to catch cross-algebra mix-ups
/// in set-level operations.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct AlgebraId(u64);

/// Coordinates of an element in the algebra's basis.
pub type Coords<F> = Vec<<F as Field>::El>;

#[derive(Clone, Debug)]
pub struct Algebra<F: Field> {
    f: F,
    id: AlgebraId,
    name: String,
    labels: Vec<String>,
    /// `products[i * dim + j]` = coordinates of `e_i e_j`.
    products: Vec<Coords<F>>,
    unit: Option<Coords<F>>,
}

impl<F: Field> Algebra<F> {
    /// Builds an algebra from a sparse structure-constant table
    /// `(i, j, k, c)` meaning the `e_k`-coordinate of `e_i e_j` is `c`.
    /// Unlisted coordinates are zero. Fails on bad indices or a table
    /// that is not associative on some basis triple.
    pub fn from_table(
        f: F,
        name: impl Into<String>,
        labels: Vec<String>,
        table: &[(usize, usize, usize, F::El)],
    ) -> Result<Self, AlgebraError> {
        let dim = labels.len();
        if dim == 0 {
            return Err(AlgebraError::Invalid("algebra must have dimension >= 1".into()));
        }
        {
            let mut seen = labels.clone();
            seen.sort();
            seen.dedup();
            if seen.len() != dim {
                return Err(AlgebraError::Invalid("duplicate basis labels".into()));
            }
        }
        let mut products = vec![vec![f.zero(); dim]; dim * dim];
        for (i, j, k, c) in table {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(AlgebraError::DimensionMismatch(format!(
                    "structure constant index ({i},{j},{k}) out of range for dimension {dim}"
                )));
            }
            products[i * dim + j][*k] = f.add(&products[i * dim + j][*k], c);
        }
        let mut alg = Algebra {
            f,
            id: AlgebraId(NEXT_ALGEBRA_ID.fetch_add(1, Ordering::Relaxed)),
            name: name.into(),
            labels,
            products,
            unit: None,
        };
        alg.check_associativity()?;
        alg.unit = alg.find_unit();
        Ok(alg)
    }

    fn check_associativity(&self) -> Result<(), AlgebraError> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let ij = self.basis_product(i, j).to_vec();
                for k in 0..d {
                    let left = self.mul_coords_basis_right(&ij, k);
                    let jk = self.basis_product(j, k).to_vec();
                    let right = self.mul_coords_basis_left(i, &jk);
                    if left != right {
                        return Err(AlgebraError::NonAssociative { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    /// Solves `u e_j = e_j` and `e_j u = e_j` for all `j` exactly; a solution
    /// is the two-sided unit, no solution means the algebra has none.
    fn find_unit(&self) -> Option<Coords<F>> {
        let d = self.dim();
        let mut rows = Vec::with_capacity(2 * d * d);
        let mut rhs = Vec::with_capacity(2 * d * d);
        for j in 0..d {
            for k in 0..d {
                // Σ_i u_i (e_i e_j)_k = δ_jk
                let row: Vec<F::El> = (0..d)
                    .map(|i| self.basis_product(i, j)[k].clone())
                    .collect();
                rows.push(row);
                rhs.push(if j == k { self.f.one() } else { self.f.zero() });
                // Σ_i u_i (e_j e_i)_k = δ_jk
                let row: Vec<F::El> = (0..d)
                    .map(|i| self.basis_product(j, i)[k].clone())
                    .collect();
                rows.push(row);
                rhs.push(if j == k { self.f.one() } else { self.f.zero() });
            }
        }
        let m = Mat::from_rows(self.f.clone(), rows).expect("uniform rows");
        m.solve(&rhs)
    }

    pub fn f(&self) -> &F {
        &self.f
    }

    pub fn id(&self) -> AlgebraId {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &[F::El] {
        &self.products[i * self.dim() + j]
    }

    pub fn unit(&self) -> Option<&Coords<F>> {
        self.unit.as_ref()
    }

    pub fn is_unital(&self) -> bool {
        self.unit.is_some()
    }

    pub fn zero_el(&self) -> Coords<F> {
        vec![self.f.zero(); self.dim()]
    }

    pub fn basis_el(&self, i: usize) -> Coords<F> {
        let mut v = self.zero_el();
        v[i] = self.f.one();
        v
    }

    pub fn is_zero_el(&self, a: &[F::El]) -> bool {
        a.iter().all(|c| self.f.is_zero(c))
    }

    pub fn add_el(&self, a: &[F::El], b: &[F::El]) -> Coords<F> {
        a.iter().zip(b).map(|(x, y)| self.f.add(x, y)).collect()
    }

    pub fn sub_el(&self, a: &[F::El], b: &[F::El]) -> Coords<F> {
        a.iter().zip(b).map(|(x, y)| self.f.sub(x, y)).collect()
    }

    pub fn neg_el(&self, a: &[F::El]) -> Coords<F> {
        a.iter().map(|x| self.f.neg(x)).collect()
    }

    pub fn scale_el(&self, c: &F::El, a: &[F::El]) -> Coords<F> {
        a.iter().map(|x| self.f.mul(c, x)).collect()
    }

    /// `e_i * b` by direct table lookup.
    fn mul_coords_basis_left(&self, i: usize, b: &[F::El]) -> Coords<F> {
        let d = self.dim();
        let mut out = self.zero_el();
        for (j, bj) in b.iter().enumerate() {
            if self.f.is_zero(bj) {
                continue;
            }
            let p = self.basis_product(i, j);
            for k in 0..d {
                out[k] = self.f.add(&out[k], &self.f.mul(bj, &p[k]));
            }
        }
        out
    }

    /// `a * e_k` by direct table lookup.
    fn mul_coords_basis_right(&self, a: &[F::El], k: usize) -> Coords<F> {
        let d = self.dim();
        let mut out = self.zero_el();
        for (i, ai) in a.iter().enumerate() {
            if self.f.is_zero(ai) {
                continue;
            }
            let p = self.basis_product(i, k);
            for t in 0..d {
                out[t] = self.f.add(&out[t], &self.f.mul(ai, &p[t]));
            }
        }
        out
    }

    /// Bilinear product of two coordinate vectors.
    pub fn mul_el(&self, a: &[F::El], b: &[F::El]) -> Coords<F> {
        assert_eq!(a.len(), self.dim(), "element has wrong dimension");
        assert_eq!(b.len(), self.dim(), "element has wrong dimension");
        let d = self.dim();
        let mut out = self.zero_el();
        for (i, ai) in a.iter().enumerate() {
            if self.f.is_zero(ai) {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if self.f.is_zero(bj) {
                    continue;
                }
                let c = self.f.mul(ai, bj);
                let p = self.basis_product(i, j);
                for k in 0..d {
                    out[k] = self.f.add(&out[k], &self.f.mul(&c, &p[k]));
                }
            }
        }
        out
    }

    /// `a^n` for `n >= 1` (no unit is assumed, so `n = 0` is not defined).
    pub fn power_el(&self, a: &[F::El], n: u32) -> Coords<F> {
        assert!(n >= 1, "power_el needs n >= 1");
        let mut acc = a.to_vec();
        for _ in 1..n {
            acc = self.mul_el(&acc, a);
        }
        acc
    }

    /// The unitalization: same basis plus a new unit as the last basis
    /// vector, `(a, λ)(b, μ) = (ab + λb + μa, λμ)`. Always adds a new unit,
    /// even when the algebra already has one (the old unit becomes a
    /// non-unit idempotent of the extension).
    pub fn adjoin_unit(&self) -> Algebra<F> {
        let d = self.dim();
        let mut labels = self.labels.clone();
        labels.push("1".to_string());
        let mut table = Vec::new();
        for i in 0..d {
            for j in 0..d {
                for (k, c) in self.basis_product(i, j).iter().enumerate() {
                    if !self.f.is_zero(c) {
                        table.push((i, j, k, c.clone()));
                    }
                }
            }
        }
        for i in 0..d {
            table.push((i, d, i, self.f.one()));
            table.push((d, i, i, self.f.one()));
        }
        table.push((d, d, d, self.f.one()));
        Algebra::from_table(
            self.f.clone(),
            format!("{}^unital", self.name),
            labels,
            &table,
        )
        .expect("unitalization of an associative algebra is associative")
    }

    /// Pads coordinates of this algebra into its unitalization.
    pub fn embed_in_unitalization(&self, a: &[F::El]) -> Coords<F> {
        let mut v = a.to_vec();
        v.push(self.f.zero());
        v
    }

    /// Matrix of `x ↦ ax` on this algebra in its own basis, column `j`
    /// holding the coordinates of `a e_j`. Multiplicative:
    /// `M(ab) = M(a) M(b)`.
    pub fn left_regular_matrix(&self, a: &[F::El]) -> Mat<F> {
        let d = self.dim();
        let mut m = Mat::zeros(self.f.clone(), d, d);
        for j in 0..d {
            let col = self.mul_coords_basis_right(a, j);
            for (k, v) in col.into_iter().enumerate() {
                m.set(k, j, v);
            }
        }
        m
    }

    /// Parses "c0,c1,..." (exact rational literals) into coordinates.
    pub fn parse_element(&self, s: &str) -> Result<Coords<F>, AlgebraError> {
        let parts: Vec<&str> = s.split(',').collect();
        if parts.len() != self.dim() {
            return Err(AlgebraError::DimensionMismatch(format!(
                "expected {} coordinates, got {}",
                self.dim(),
                parts.len()
            )));
        }
        parts.iter().map(|p| self.f.parse(p)).collect()
    }

    /// Renders an element as a linear combination of labeled basis vectors.
    pub fn render_element(&self, a: &[F::El]) -> String {
        let mut parts = Vec::new();
        for (i, c) in a.iter().enumerate() {
            if self.f.is_zero(c) {
                continue;
            }
            let coeff = self.f.render(c);
            let label = &self.labels[i];
            if label == "1" {
                parts.push(coeff);
            } else if coeff == "1" {
                parts.push(label.clone());
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

    /// Direct sum with componentwise multiplication; labels get `l.`/`r.`
    /// prefixes to stay unique.
    pub fn direct_sum(&self, other: &Algebra<F>) -> Result<Algebra<F>, AlgebraError> {
        if self.f != other.f {
            return Err(AlgebraError::WrongRegime {
                needed: format!("{:?}", self.f.regime()),
                found: format!("{:?}", other.f.regime()),
            });
        }
        let da = self.dim();
        let mut labels: Vec<String> = self.labels.iter().map(|l| format!("l.{l}")).collect();
        labels.extend(other.labels.iter().map(|l| format!("r.{l}")));
        let mut table = Vec::new();
        for i in 0..da {
            for j in 0..da {
                for (k, c) in self.basis_product(i, j).iter().enumerate() {
                    if !self.f.is_zero(c) {
                        table.push((i, j, k, c.clone()));
                    }
                }
            }
        }
        for i in 0..other.dim() {
            for j in 0..other.dim() {
                for (k, c) in other.basis_product(i, j).iter().enumerate() {
                    if !other.f.is_zero(c) {
                        table.push((da + i, da + j, da + k, c.clone()));
                    }
                }
            }
        }
        Algebra::from_table(
            self.f.clone(),
            format!("direct_sum({},{})", self.name, other.name),
            labels,
            &table,
        )
    }
}

// ---------------------------------------------------------------------------
// Builtin families
// ---------------------------------------------------------------------------

/// The named algebras every analysis and oracle run can refer to.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum BuiltinSpec {
    /// Full matrix algebra `M_n`, `n <= 4`.
    MatrixFull(usize),
    /// Lower triangular `n x n` matrices, `n <= 4`.
    LowerTriangular(usize),
    /// Upper triangular `n x n` matrices, `n <= 4`.
    UpperTriangular(usize),
    /// Diagonal `n x n` matrices, `n <= 4`.
    Diagonal(usize),
    /// `d`-dimensional algebra with all products zero, `d <= 8`.
    ZeroProduct(usize),
    /// `span{t, ..., t^d}` with `t^{d+1} = 0`, `d <= 8`.
    TruncatedPolynomial(usize),
    /// Componentwise sum of two builtins.
    DirectSum(Box<BuiltinSpec>, Box<BuiltinSpec>),
    /// The upper-triangular reading `((a,b),(0,c))` of Zemanek's
    /// absorbing-idempotent example.
    ZemanekUpper,
    /// The literal matrix pattern `((a,b),(c,0))` of that example, with the
    /// out-of-pattern product entry dropped. Not associative; construction
    /// reports the witnessing basis triple.
    ZemanekLiteral,
}

impl BuiltinSpec {
    /// Parses specs like `lower_triangular(2)`, `zero_product(3)`,
    /// `direct_sum(lower_triangular(2),zero_product(1))`, `zemanek_upper`.
    pub fn parse(s: &str) -> Result<Self, AlgebraError> {
        let s = s.trim();
        let bad = || AlgebraError::UnknownFamily(s.to_string());
        if let Some(rest) = s.strip_prefix("direct_sum(") {
            let inner = rest.strip_suffix(')').ok_or_else(bad)?;
            // split at the top-level comma
            let mut depth = 0usize;
            let mut split = None;
            for (idx, ch) in inner.char_indices() {
                match ch {
                    '(' => depth += 1,
                    ')' => depth = depth.saturating_sub(1),
                    ',' if depth == 0 => {
                        split = Some(idx);
                        break;
                    }
                    _ => {}
                }
            }
            let split = split.ok_or_else(bad)?;
            let a = BuiltinSpec::parse(&inner[..split])?;
            let b = BuiltinSpec::parse(&inner[split + 1..])?;
            return Ok(BuiltinSpec::DirectSum(Box::new(a), Box::new(b)));
        }
        match s {
            "zemanek_upper" => return Ok(BuiltinSpec::ZemanekUpper),
            "zemanek_literal" => return Ok(BuiltinSpec::ZemanekLiteral),
            _ => {}
        }
        let (head, arg) = s
            .split_once('(')
            .and_then(|(h, r)| r.strip_suffix(')').map(|a| (h, a)))
            .ok_or_else(bad)?;
        let n: usize = arg.trim().parse().map_err(|_| bad())?;
        match head {
            "matrix_full" => Ok(BuiltinSpec::MatrixFull(n)),
            "lower_triangular" => Ok(BuiltinSpec::LowerTriangular(n)),
            "upper_triangular" => Ok(BuiltinSpec::UpperTriangular(n)),
            "diagonal" => Ok(BuiltinSpec::Diagonal(n)),
            "zero_product" => Ok(BuiltinSpec::ZeroProduct(n)),
            "truncated_polynomial" => Ok(BuiltinSpec::TruncatedPolynomial(n)),
            _ => Err(bad()),
        }
    }

    pub fn spec_string(&self) -> String {
        match self {
            BuiltinSpec::MatrixFull(n) => format!("matrix_full({n})"),
            BuiltinSpec::LowerTriangular(n) => format!("lower_triangular({n})"),
            BuiltinSpec::UpperTriangular(n) => format!("upper_triangular({n})"),
            BuiltinSpec::Diagonal(n) => format!("diagonal({n})"),
            BuiltinSpec::ZeroProduct(n) => format!("zero_product({n})"),
            BuiltinSpec::TruncatedPolynomial(n) => format!("truncated_polynomial({n})"),
            BuiltinSpec::DirectSum(a, b) => {
                format!("direct_sum({},{})", a.spec_string(), b.spec_string())
            }
            BuiltinSpec::ZemanekUpper => "zemanek_upper".to_string(),
            BuiltinSpec::ZemanekLiteral => "zemanek_literal".to_string(),
        }
    }

    /// Builds the named algebra over the given field.
    pub fn build<F: Field>(&self, f: F) -> Result<Algebra<F>, AlgebraError> {
        let check_n = |n: usize| -> Result<(), AlgebraError> {
            if n == 0 || n > 4 {
                Err(AlgebraError::SizeLimit(format!(
                    "matrix size {n} outside 1..=4"
                )))
            } else {
                Ok(())
            }
        };
        let check_d = |d: usize| -> Result<(), AlgebraError> {
            if d == 0 || d > 8 {
                Err(AlgebraError::SizeLimit(format!(
                    "dimension parameter {d} outside 1..=8"
                )))
            } else {
                Ok(())
            }
        };
        match self {
            BuiltinSpec::MatrixFull(n) => {
                check_n(*n)?;
                matrix_subalgebra(f, self.spec_string(), *n, |_, _| true)
            }
            BuiltinSpec::LowerTriangular(n) => {
                check_n(*n)?;
                matrix_subalgebra(f, self.spec_string(), *n, |r, c| r >= c)
            }
            BuiltinSpec::UpperTriangular(n) => {
                check_n(*n)?;
                matrix_subalgebra(f, self.spec_string(), *n, |r, c| r <= c)
            }
            BuiltinSpec::Diagonal(n) => {
                check_n(*n)?;
                matrix_subalgebra(f, self.spec_string(), *n, |r, c| r == c)
            }
            BuiltinSpec::ZeroProduct(d) => {
                check_d(*d)?;
                let labels = (1..=*d).map(|i| format!("z{i}")).collect();
                Algebra::from_table(f, self.spec_string(), labels, &[])
            }
            BuiltinSpec::TruncatedPolynomial(d) => {
                check_d(*d)?;
                let labels = (1..=*d)
                    .map(|i| if i == 1 { "t".into() } else { format!("t^{i}") })
                    .collect();
                let mut table = Vec::new();
                for i in 1..=*d {
                    for j in 1..=*d {
                        if i + j <= *d {
                            table.push((i - 1, j - 1, i + j - 1, f.one()));
                        }
                    }
                }
                Algebra::from_table(f, self.spec_string(), labels, &table)
            }
            BuiltinSpec::DirectSum(a, b) => {
                let left = a.build(f.clone())?;
                let right = b.build(f)?;
                if left.dim() + right.dim() > 16 {
                    return Err(AlgebraError::SizeLimit(format!(
                        "direct sum dimension {} exceeds 16",
                        left.dim() + right.dim()
                    )));
                }
                let mut sum = left.direct_sum(&right)?;
                sum.name = self.spec_string();
                Ok(sum)
            }
            BuiltinSpec::ZemanekUpper => {
                matrix_subalgebra(f, self.spec_string(), 2, |r, c| r <= c)
            }
            BuiltinSpec::ZemanekLiteral => {
                // span{E11, E12, E21} with matrix products, except that
                // E21*E12 (= E22, outside the span) is dropped to zero.
                // This truncation is not associative; from_table reports
                // the basis triple that breaks.
                let labels = vec!["E11".into(), "E12".into(), "E21".into()];
                let table = [
                    (0, 0, 0, f.one()), // E11 E11 = E11
                    (0, 1, 1, f.one()), // E11 E12 = E12
                    (1, 2, 0, f.one()), // E12 E21 = E11
                    (2, 0, 2, f.one()), // E21 E11 = E21
                ];
                Algebra::from_table(f, self.spec_string(), labels, &table)
            }
        }
    }
}

/// Builds the span of the matrix units `E_rc` allowed by `keep`, with matrix
/// multiplication `E_ab E_cd = δ_bc E_ad`; requires the kept pattern to be
/// multiplicatively closed (true for full/triangular/diagonal patterns).
fn matrix_subalgebra<F: Field>(
    f: F,
    name: String,
    n: usize,
    keep: impl Fn(usize, usize) -> bool,
) -> Result<Algebra<F>, AlgebraError> {
    let mut units = Vec::new(); // (row, col), 1-based labels
    for r in 1..=n {
        for c in 1..=n {
            if keep(r, c) {
                units.push((r, c));
            }
        }
    }
    let labels = units.iter().map(|(r, c)| format!("E{r}{c}")).collect();
    let index_of = |r: usize, c: usize| units.iter().position(|&(a, b)| (a, b) == (r, c));
    let mut table = Vec::new();
    for (i, &(a, b)) in units.iter().enumerate() {
        for (j, &(c, d)) in units.iter().enumerate() {
            if b == c {
                let k = index_of(a, d).expect("pattern closed under multiplication");
                table.push((i, j, k, f.one()));
            }
        }
    }
    Algebra::from_table(f, name, labels, &table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{parse_rational, PrimeField, Rationals};
    use num::BigRational;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    fn lt2() -> Algebra<Rationals> {
        BuiltinSpec::parse("lower_triangular(2)")
            .unwrap()
            .build(Rationals)
            .unwrap()
    }

    /// Independent product oracle: expand basis elements as dense n x n
    /// matrices, multiply entrywise, and re-read coordinates.
    fn dense_matrix_product(
        n: usize,
        units: &[(usize, usize)],
        a: &[BigRational],
        b: &[BigRational],
    ) -> Vec<BigRational> {
        let to_dense = |coords: &[BigRational]| {
            let mut m = vec![vec![q("0"); n]; n];
            for (idx, &(r, c)) in units.iter().enumerate() {
                m[r - 1][c - 1] = coords[idx].clone();
            }
            m
        };
        let ma = to_dense(a);
        let mb = to_dense(b);
        let mut prod = vec![vec![q("0"); n]; n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let t = &ma[i][k] * &mb[k][j];
                    prod[i][j] = &prod[i][j] + t;
                }
            }
        }
        units
            .iter()
            .map(|&(r, c)| prod[r - 1][c - 1].clone())
            .collect()
    }

    #[test]
    fn lower_triangular_2_structure() {
        let a = lt2();
        assert_eq!(a.dim(), 3);
        assert_eq!(a.labels(), &["E11", "E21", "E22"]);
        assert!(a.is_unital());
        assert_eq!(a.unit().unwrap(), &vec![q("1"), q("0"), q("1")]);
    }

    #[test]
    fn products_match_dense_matrix_oracle() {
        let a = lt2();
        let units = [(1, 1), (2, 1), (2, 2)];
        // all basis pairs plus a couple of dense combinations
        let samples: Vec<Vec<BigRational>> = vec![
            vec![q("1"), q("0"), q("0")],
            vec![q("0"), q("1"), q("0")],
            vec![q("0"), q("0"), q("1")],
            vec![q("2"), q("-3"), q("1/2")],
            vec![q("-1/3"), q("5"), q("7")],
        ];
        for x in &samples {
            for y in &samples {
                assert_eq!(
                    a.mul_el(x, y),
                    dense_matrix_product(2, &units, x, y),
                    "product mismatch for {x:?} * {y:?}"
                );
            }
        }
    }

    #[test]
    fn matrix_full_2_against_oracle() {
        let a = BuiltinSpec::MatrixFull(2).build(Rationals).unwrap();
        assert_eq!(a.dim(), 4);
        assert_eq!(a.labels(), &["E11", "E12", "E21", "E22"]);
        assert_eq!(a.unit().unwrap(), &vec![q("1"), q("0"), q("0"), q("1")]);
        let units = [(1, 1), (1, 2), (2, 1), (2, 2)];
        let x = vec![q("1"), q("2"), q("3"), q("4")];
        let y = vec![q("0"), q("1"), q("-1"), q("1/2")];
        assert_eq!(a.mul_el(&x, &y), dense_matrix_product(2, &units, &x, &y));
    }

    #[test]
    fn zero_product_and_truncated_polynomial() {
        let z = BuiltinSpec::ZeroProduct(2).build(Rationals).unwrap();
        assert!(!z.is_unital());
        let x = vec![q("1"), q("2")];
        assert!(z.is_zero_el(&z.mul_el(&x, &x)));

        let t = BuiltinSpec::TruncatedPolynomial(3).build(Rationals).unwrap();
        assert_eq!(t.dim(), 3);
        assert!(!t.is_unital());
        let tt = t.basis_el(0);
        assert_eq!(t.power_el(&tt, 2), t.basis_el(1));
        assert_eq!(t.power_el(&tt, 3), t.basis_el(2));
        assert!(t.is_zero_el(&t.power_el(&tt, 4)));
        // t^2 * t^2 = t^4 = 0
        assert!(t.is_zero_el(&t.mul_el(&t.basis_el(1), &t.basis_el(1))));
    }

    #[test]
    fn adjoin_unit_extends_and_keeps_old_unit_as_idempotent() {
        let z1 = BuiltinSpec::ZeroProduct(1).build(Rationals).unwrap();
        let zu = z1.adjoin_unit();
        assert_eq!(zu.dim(), 2);
        assert!(zu.is_unital());
        // z * z = 0 still, and (z + 1)^2 = z^2 + 2z + 1 = 2z + 1
        let z = zu.basis_el(0);
        assert!(zu.is_zero_el(&zu.mul_el(&z, &z)));

        let a = lt2();
        let au = a.adjoin_unit();
        assert_eq!(au.dim(), 4);
        let old_unit = a.embed_in_unitalization(a.unit().unwrap());
        // old unit is idempotent but not the unit of the extension
        assert_eq!(au.mul_el(&old_unit, &old_unit), old_unit);
        assert_ne!(&old_unit, au.unit().unwrap());
        // embedded copy is an ideal: products with the new basis stay inside
        let e21 = a.embed_in_unitalization(&a.basis_el(1));
        let prod = au.mul_el(au.unit().unwrap(), &e21);
        assert_eq!(prod, e21);
    }

    #[test]
    fn left_regular_matrix_is_multiplicative() {
        let a = lt2();
        // M(E21) = M(E22) M(E21)
        let e21 = a.basis_el(1);
        let e22 = a.basis_el(2);
        let m21 = a.left_regular_matrix(&e21);
        let m22 = a.left_regular_matrix(&e22);
        assert_eq!(a.mul_el(&e22, &e21), e21);
        assert_eq!(m22.matmul(&m21), m21);
        // and on random-ish dense elements
        let x = vec![q("2"), q("-1"), q("3")];
        let y = vec![q("1/2"), q("4"), q("-2")];
        let mxy = a.left_regular_matrix(&a.mul_el(&x, &y));
        assert_eq!(
            a.left_regular_matrix(&x).matmul(&a.left_regular_matrix(&y)),
            mxy
        );
        // a = 0 gives the zero matrix
        assert!(a.left_regular_matrix(&a.zero_el()).is_zero());
    }

    #[test]
    fn direct_sum_componentwise() {
        let s = BuiltinSpec::parse("direct_sum(lower_triangular(2),zero_product(1))")
            .unwrap()
            .build(Rationals)
            .unwrap();
        assert_eq!(s.dim(), 4);
        // zero_product side has no unit, so neither does the sum
        assert!(!s.is_unital());
        let left_e11 = s.basis_el(0);
        let right_z = s.basis_el(3);
        assert!(s.is_zero_el(&s.mul_el(&left_e11, &right_z)));
        assert_eq!(s.mul_el(&left_e11, &left_e11), left_e11);

        let both = BuiltinSpec::parse("direct_sum(diagonal(1),diagonal(1))")
            .unwrap()
            .build(Rationals)
            .unwrap();
        assert!(both.is_unital());
        assert_eq!(both.unit().unwrap(), &vec![q("1"), q("1")]);
    }

    #[test]
    fn zemanek_literal_reading_is_not_associative() {
        let err = BuiltinSpec::ZemanekLiteral.build(Rationals).unwrap_err();
        match err {
            AlgebraError::NonAssociative { i, j, k } => {
                // (E12 E21) E12 = E11 E12 = E12, but E12 (E21 E12) = 0
                assert_eq!((i, j, k), (1, 2, 1));
            }
            other => panic!("expected NonAssociative, got {other:?}"),
        }
        // the upper-triangular reading builds fine
        let upper = BuiltinSpec::ZemanekUpper.build(Rationals).unwrap();
        assert_eq!(upper.labels(), &["E11", "E12", "E22"]);
    }

    #[test]
    fn size_limits_enforced() {
        assert!(matches!(
            BuiltinSpec::MatrixFull(5).build(Rationals),
            Err(AlgebraError::SizeLimit(_))
        ));
        assert!(matches!(
            BuiltinSpec::TruncatedPolynomial(9).build(Rationals),
            Err(AlgebraError::SizeLimit(_))
        ));
        assert!(BuiltinSpec::TruncatedPolynomial(8).build(Rationals).is_ok());
        assert!(BuiltinSpec::MatrixFull(4).build(Rationals).is_ok());
    }

    #[test]
    fn spec_parse_roundtrip() {
        for s in [
            "matrix_full(2)",
            "lower_triangular(3)",
            "zero_product(8)",
            "truncated_polynomial(4)",
            "direct_sum(lower_triangular(2),zero_product(2))",
            "direct_sum(direct_sum(diagonal(1),diagonal(1)),zero_product(1))",
            "zemanek_upper",
            "zemanek_literal",
        ] {
            let spec = BuiltinSpec::parse(s).unwrap();
            assert_eq!(spec.spec_string(), s);
        }
        assert!(BuiltinSpec::parse("heisenberg(3)").is_err());
        assert!(BuiltinSpec::parse("matrix_full(x)").is_err());
    }

    #[test]
    fn unit_detection_matches_brute_force_over_gf2() {
        let f = PrimeField::new(2).unwrap();
        let a = BuiltinSpec::LowerTriangular(2).build(f).unwrap();
        // exhaustive search over all 8 elements for a two-sided unit
        let mut found = Vec::new();
        for bits in 0..8u32 {
            let cand: Vec<u64> = (0..3).map(|i| u64::from(bits >> i & 1)).collect();
            let is_unit = (0..3).all(|i| {
                let e = a.basis_el(i);
                a.mul_el(&cand, &e) == e && a.mul_el(&e, &cand) == e
            });
            if is_unit {
                found.push(cand);
            }
        }
        assert_eq!(found.len(), 1);
        assert_eq!(&found[0], a.unit().unwrap());
    }

    #[test]
    fn parse_and_render_elements() {
        let a = lt2();
        let e = a.parse_element("1,2,-1/2").unwrap();
        assert_eq!(e, vec![q("1"), q("2"), q("-1/2")]);
        assert_eq!(a.render_element(&e), "E11 + 2*E21 + -1/2*E22");
        assert_eq!(a.render_element(&a.zero_el()), "0");
        assert!(a.parse_element("1,2").is_err());
        assert!(a.parse_element("1,2,x").is_err());
    }
}
