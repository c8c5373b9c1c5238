//! Exact integer matrices and the Smith normal form.
//!
//! Everything downstream (group presentations, kernels, cokernels, the
//! pairing solves) reduces to the decomposition `U * A * V = D` computed
//! here, with `U` and `V` unimodular and `D` diagonal satisfying the
//! divisibility chain `d_1 | d_2 | ...`.  Entries are arbitrary-precision
//! integers, so no input can overflow.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense rectangular matrix over the integers, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self {
            rows,
            cols,
            entries,
        }
    }

    /// Build from rows of machine integers; handy in tests and parsing.
    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_fn(r, c, |i, j| BigInt::from(rows[i][j]))
    }

    pub fn from_entry_vec(rows: usize, cols: usize, entries: Vec<BigInt>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        Self {
            rows,
            cols,
            entries,
        }
    }

    /// Column vector from a slice.
    pub fn column(entries: &[BigInt]) -> Self {
        Self::from_fn(entries.len(), 1, |i, _| entries[i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn col_vec(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vec(&self, i: usize) -> Vec<BigInt> {
        (0..self.cols).map(|j| self[(i, j)].clone()).collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Self::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }

    /// Keep the listed columns, in order.
    pub fn select_cols(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |i, j| self[(i, cols[j])].clone())
    }

    /// Keep the listed rows, in order.
    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self::from_fn(rows.len(), self.cols, |i, j| self[(rows[i], j)].clone())
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "dimension mismatch in mul_vec");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.rows && j < self.cols);
        i * self.cols + j
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let (ia, ib) = (self.idx(a, j), self.idx(b, j));
            self.entries.swap(ia, ib);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            let (ia, ib) = (self.idx(i, a), self.idx(i, b));
            self.entries.swap(ia, ib);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let i = self.idx(r, j);
            let v = std::mem::take(&mut self.entries[i]);
            self.entries[i] = -v;
        }
    }

    fn negate_col(&mut self, c: usize) {
        for i in 0..self.rows {
            let k = self.idx(i, c);
            let v = std::mem::take(&mut self.entries[k]);
            self.entries[k] = -v;
        }
    }

    /// row[target] += q * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let add = &self[(source, j)] * q;
            let i = self.idx(target, j);
            let v = std::mem::take(&mut self.entries[i]);
            self.entries[i] = v + add;
        }
    }

    /// col[target] += q * col[source]
    fn add_col_multiple(&mut self, target: usize, source: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let add = &self[(i, source)] * q;
            let k = self.idx(i, target);
            let v = std::mem::take(&mut self.entries[k]);
            self.entries[k] = v + add;
        }
    }

    /// Exact determinant by the Bareiss fraction-free elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !m[(i, k)].is_zero()) {
                    Some(i) => {
                        m.swap_rows(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[(k, k)] * &m[(i, j)] - &m[(i, k)] * &m[(k, j)];
                    m[(i, j)] = num / &prev;
                }
                m[(i, k)] = BigInt::zero();
            }
            prev = m[(k, k)].clone();
        }
        sign * m[(n - 1, n - 1)].clone()
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        let k = self.idx(i, j);
        &mut self.entries[k]
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        IntMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).map(|k| &self[(i, k)] * &rhs[(k, j)]).sum()
        })
    }
}

impl Add for &IntMatrix {
    type Output = IntMatrix;
    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMatrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] + &rhs[(i, j)])
    }
}

impl Sub for &IntMatrix {
    type Output = IntMatrix;
    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        IntMatrix::from_fn(self.rows, self.cols, |i, j| &self[(i, j)] - &rhs[(i, j)])
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;
    fn neg(self) -> IntMatrix {
        IntMatrix::from_fn(self.rows, self.cols, |i, j| -&self[(i, j)])
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix({}x{})", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, " [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strings: Vec<Vec<String>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)].to_string()).collect())
            .collect();
        let width = strings.iter().flatten().map(String::len).max().unwrap_or(1);
        for (i, row) in strings.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for (j, s) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{s:>width$}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

/// Result of `u * a * v = d` with `u`, `v` unimodular and `d` diagonal,
/// `d_1 | d_2 | ...`, all diagonal entries non-negative.  The inverses are
/// tracked alongside so that sections of quotient maps come for free.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithDecomposition {
    /// Diagonal entries, padded with zeros up to `rows.min(cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let n = self.d.rows().min(self.d.cols());
        (0..n).map(|i| self.d[(i, i)].clone()).collect()
    }
}

struct SnfWorker {
    b: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl SnfWorker {
    fn new(a: &IntMatrix) -> Self {
        Self {
            b: a.clone(),
            u: IntMatrix::identity(a.rows()),
            u_inv: IntMatrix::identity(a.rows()),
            v: IntMatrix::identity(a.cols()),
            v_inv: IntMatrix::identity(a.cols()),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.b.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.b.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    fn negate_row(&mut self, r: usize) {
        self.b.negate_row(r);
        self.u.negate_row(r);
        self.u_inv.negate_col(r);
    }

    /// b.row[t] += q * b.row[s]; inverse tracked as col[s] -= q * col[t].
    fn add_row_multiple(&mut self, t: usize, s: usize, q: &BigInt) {
        self.b.add_row_multiple(t, s, q);
        self.u.add_row_multiple(t, s, q);
        let neg = -q;
        self.u_inv.add_col_multiple(s, t, &neg);
    }

    /// b.col[t] += q * b.col[s]; inverse tracked as row[s] -= q * row[t].
    fn add_col_multiple(&mut self, t: usize, s: usize, q: &BigInt) {
        self.b.add_col_multiple(t, s, q);
        self.v.add_col_multiple(t, s, q);
        let neg = -q;
        self.v_inv.add_row_multiple(s, t, &neg);
    }

    /// Smallest non-zero entry (by absolute value) of the trailing submatrix.
    fn min_pivot(&self, k: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in k..self.b.rows() {
            for j in k..self.b.cols() {
                if self.b[(i, j)].is_zero() {
                    continue;
                }
                match best {
                    Some(p) if self.b[p].abs() <= self.b[(i, j)].abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }
}

/// Smith normal form.  Pivots are chosen with minimal absolute value, which
/// keeps coefficient growth tame at the scales this crate targets.
pub fn smith_normal_form_full(a: &IntMatrix) -> SmithDecomposition {
    let mut w = SnfWorker::new(a);
    let (rows, cols) = (a.rows(), a.cols());
    let steps = rows.min(cols);
    for k in 0..steps {
        'pivot: loop {
            let Some((pi, pj)) = w.min_pivot(k) else {
                // trailing submatrix is zero; done
                return finish(w);
            };
            w.swap_rows(k, pi);
            w.swap_cols(k, pj);
            if w.b[(k, k)].is_negative() {
                w.negate_row(k);
            }
            let pivot = w.b[(k, k)].clone();
            // clear column k below the pivot
            let mut clean = true;
            for i in k + 1..rows {
                if w.b[(i, k)].is_zero() {
                    continue;
                }
                let q = -(&w.b[(i, k)] / &pivot);
                w.add_row_multiple(i, k, &q);
                if !w.b[(i, k)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue 'pivot; // a smaller remainder appeared below
            }
            // clear row k right of the pivot
            for j in k + 1..cols {
                if w.b[(k, j)].is_zero() {
                    continue;
                }
                let q = -(&w.b[(k, j)] / &pivot);
                w.add_col_multiple(j, k, &q);
                if !w.b[(k, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue 'pivot;
            }
            // pivot must divide the whole trailing submatrix, otherwise the
            // divisibility chain would fail; fold an offending row in
            for i in k + 1..rows {
                for j in k + 1..cols {
                    if !(&w.b[(i, j)] % &pivot).is_zero() {
                        w.add_row_multiple(k, i, &BigInt::one());
                        continue 'pivot;
                    }
                }
            }
            break 'pivot;
        }
    }
    finish(w)
}

fn finish(w: SnfWorker) -> SmithDecomposition {
    debug_assert!(is_snf_shape(&w.b));
    SmithDecomposition {
        u: w.u,
        u_inv: w.u_inv,
        d: w.b,
        v: w.v,
        v_inv: w.v_inv,
    }
}

fn is_snf_shape(d: &IntMatrix) -> bool {
    for i in 0..d.rows() {
        for j in 0..d.cols() {
            if i != j && !d[(i, j)].is_zero() {
                return false;
            }
        }
    }
    let diag: Vec<&BigInt> = (0..d.rows().min(d.cols())).map(|i| &d[(i, i)]).collect();
    diag.windows(2).all(|w| {
        if w[0].is_zero() {
            w[1].is_zero()
        } else {
            (w[1] % w[0]).is_zero()
        }
    }) && diag.iter().all(|x| !x.is_negative())
}

/// The `(U, D, V)` triple with `U * A * V = D`.
pub fn smith_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let s = smith_normal_form_full(a);
    (s.u, s.d, s.v)
}

/// A basis (as columns) of the integer kernel `{ x : A x = 0 }`.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let s = smith_normal_form_full(a);
    let n = a.cols();
    let r = s.diagonal().iter().take_while(|d| !d.is_zero()).count();
    // columns r..n of V span the kernel
    s.v.select_cols(&(r..n).collect::<Vec<_>>())
}

/// One integer solution of `A x = b`, if any exists.
pub fn solve(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(b.len(), a.rows(), "solve dimension mismatch");
    let s = smith_normal_form_full(a);
    let c = s.u.mul_vec(b);
    let diag = s.diagonal();
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, ci) in c.iter().enumerate() {
        let d = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if d.is_zero() {
            if !ci.is_zero() {
                return None;
            }
        } else {
            let (q, r) = ci.div_rem(&d);
            if !r.is_zero() {
                return None;
            }
            if i < y.len() {
                y[i] = q;
            } else {
                return None; // nonzero pivot beyond column count cannot happen
            }
        }
    }
    Some(s.v.mul_vec(&y))
}

/// Extended gcd of a slice: returns `(g, x)` with `sum x_i a_i = g >= 0`.
pub fn xgcd_vec(values: &[BigInt]) -> (BigInt, Vec<BigInt>) {
    let mut g = BigInt::zero();
    let mut coeffs = vec![BigInt::zero(); values.len()];
    for (i, a) in values.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        if g.is_zero() {
            if a.is_negative() {
                g = -a;
                coeffs[i] = BigInt::from(-1);
            } else {
                g = a.clone();
                coeffs[i] = BigInt::one();
            }
            continue;
        }
        let e = g.extended_gcd(a);
        // e.gcd = e.x * g + e.y * a
        for c in coeffs.iter_mut() {
            *c = &*c * &e.x;
        }
        coeffs[i] = e.y;
        g = e.gcd;
    }
    (g, coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    fn check_decomposition(a: &IntMatrix) {
        let s = smith_normal_form_full(a);
        let recomposed = &(&s.u * a) * &s.v;
        assert_eq!(recomposed, s.d, "U*A*V != D for {a:?}");
        assert_eq!(s.u.determinant().abs(), BigInt::one(), "U not unimodular");
        assert_eq!(s.v.determinant().abs(), BigInt::one(), "V not unimodular");
        assert_eq!(&s.u * &s.u_inv, IntMatrix::identity(a.rows()));
        assert_eq!(&s.v * &s.v_inv, IntMatrix::identity(a.cols()));
        assert!(is_snf_shape(&s.d), "diagonal chain violated: {:?}", s.d);
    }

    /// Product of the first k invariant factors equals the gcd of all k x k
    /// minors; the independent oracle for the normal form.
    fn minor_gcd(a: &IntMatrix, k: usize) -> BigInt {
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            if k > n {
                return vec![];
            }
            let mut out = Vec::new();
            for last in k - 1..n {
                for mut head in subsets(last, k - 1) {
                    head.push(last);
                    out.push(head);
                }
            }
            out
        }
        let mut g = BigInt::zero();
        for rs in subsets(a.rows(), k) {
            for cs in subsets(a.cols(), k) {
                let minor = a.select_rows(&rs).select_cols(&cs).determinant();
                g = g.gcd(&minor);
            }
        }
        g
    }

    fn check_minor_gcd_oracle(a: &IntMatrix) {
        let s = smith_normal_form_full(a);
        let diag = s.diagonal();
        let mut product = BigInt::one();
        for (k, d) in diag.iter().enumerate() {
            product *= d;
            assert_eq!(
                product,
                minor_gcd(a, k + 1),
                "minor-gcd oracle failed at k={} for {a:?}",
                k + 1
            );
        }
    }

    #[test]
    fn snf_2x2_example() {
        let a = IntMatrix::from_rows_i64(&[vec![2, 4], vec![6, 8]]);
        let s = smith_normal_form_full(&a);
        // d_1 = gcd of all entries = 2, d_1*d_2 = gcd of 2x2 minors = |det| = 8
        assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
        check_decomposition(&a);
    }

    #[test]
    fn snf_identity_and_zero() {
        let id = IntMatrix::identity(3);
        let s = smith_normal_form_full(&id);
        assert_eq!(s.d, id);
        let z = IntMatrix::zeros(2, 3);
        let s = smith_normal_form_full(&z);
        assert!(s.d.is_zero());
        check_decomposition(&z);
    }

    #[test]
    fn snf_known_4x4() {
        let a = IntMatrix::from_rows_i64(&[
            vec![-6, 111, -36, 6],
            vec![5, -672, 210, 74],
            vec![0, -255, 81, 24],
            vec![-7, 255, -81, -10],
        ]);
        let s = smith_normal_form_full(&a);
        let diag: Vec<i64> = s.diagonal().iter().map(|d| d.to_i64().unwrap()).collect();
        assert_eq!(diag, vec![1, 3, 21, 0]);
        check_decomposition(&a);
    }

    #[test]
    fn snf_minor_gcd_oracle_randomized() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
        for _ in 0..10_000 {
            let rows = rng.gen_range(1..=4);
            let cols = rng.gen_range(1..=4);
            let a = IntMatrix::from_fn(rows, cols, |_, _| BigInt::from(rng.gen_range(-9..=9)));
            check_minor_gcd_oracle(&a);
        }
    }

    #[test]
    fn solve_and_kernel() {
        let a = IntMatrix::from_rows_i64(&[vec![2, 4], vec![6, 8]]);
        let b = vec![BigInt::from(6), BigInt::from(14)];
        let x = solve(&a, &b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        assert!(solve(&a, &[BigInt::from(1), BigInt::from(0)]).is_none());

        let a = IntMatrix::from_rows_i64(&[vec![2, -6]]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols(), 1);
        assert!(a.mul_vec(&k.col_vec(0)).iter().all(Zero::is_zero));
        assert_eq!(k[(0, 0)].abs(), BigInt::from(3));
        assert_eq!(k[(1, 0)].abs(), BigInt::from(1));
    }

    #[test]
    fn xgcd_vec_bezout() {
        let vals: Vec<BigInt> = [12, -8, 30].iter().map(|&x| BigInt::from(x)).collect();
        let (g, coeffs) = xgcd_vec(&vals);
        assert_eq!(g, BigInt::from(2));
        let combo: BigInt = vals.iter().zip(&coeffs).map(|(a, c)| a * c).sum();
        assert_eq!(combo, g);
    }

    #[test]
    fn bareiss_determinant() {
        let a = IntMatrix::from_rows_i64(&[vec![2, 0, 1], vec![1, 1, 0], vec![0, 3, 1]]);
        assert_eq!(a.determinant(), BigInt::from(5));
        assert_eq!(IntMatrix::identity(4).determinant(), BigInt::one());
        assert_eq!(IntMatrix::zeros(2, 2).determinant(), BigInt::zero());
    }

    proptest! {
        #[test]
        fn snf_recomposes(rows in 1usize..5, cols in 1usize..5, seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            let a = IntMatrix::from_fn(rows, cols, |_, _| BigInt::from(rng.gen_range(-20..=20i64)));
            check_decomposition(&a);
        }

        #[test]
        fn solve_agrees_with_product(seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
            let rows = rng.gen_range(1..4);
            let cols = rng.gen_range(1..4);
            let a = IntMatrix::from_fn(rows, cols, |_, _| BigInt::from(rng.gen_range(-9..=9i64)));
            let x: Vec<BigInt> = (0..cols).map(|_| BigInt::from(rng.gen_range(-9..=9i64))).collect();
            let b = a.mul_vec(&x);
            let sol = solve(&a, &b).expect("constructed system must be solvable");
            prop_assert_eq!(a.mul_vec(&sol), b);
        }
    }
}
