//! Dense GF(2) linear algebra on u64-limb bit rows.
//!
//! Used for the quotient-ring decision procedures and the coaction-complement
//! solves. Matrices here are small (hundreds of rows/columns), so plain
//! Gauss-Jordan elimination over packed rows is more than fast enough.

use crate::error::AlgebraError;

/// A vector over GF(2), packed into u64 limbs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Gf2Vec {
    len: usize,
    limbs: Vec<u64>,
}

impl Gf2Vec {
    pub fn zeros(len: usize) -> Self {
        Gf2Vec {
            len,
            limbs: vec![0; len.div_ceil(64)],
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.limbs[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.limbs[i / 64] |= mask;
        } else {
            self.limbs[i / 64] &= !mask;
        }
    }

    pub fn xor_assign(&mut self, other: &Gf2Vec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.limbs.iter_mut().zip(&other.limbs) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.iter().all(|&l| l == 0)
    }

    /// Index of the first set bit, if any.
    pub fn leading(&self) -> Option<usize> {
        for (li, &limb) in self.limbs.iter().enumerate() {
            if limb != 0 {
                return Some(li * 64 + limb.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(|&i| self.get(i))
    }
}

/// Dense GF(2) matrix, row-major.
#[derive(Clone, Debug)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Gf2Vec>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Gf2Matrix {
            rows,
            cols,
            data: vec![Gf2Vec::zeros(cols); rows],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value);
    }

    pub fn row(&self, r: usize) -> &Gf2Vec {
        &self.data[r]
    }

    pub fn push_row(&mut self, row: Gf2Vec) {
        assert_eq!(row.len(), self.cols);
        self.data.push(row);
        self.rows += 1;
    }

    /// Multiply by a column vector.
    pub fn mul_vec(&self, v: &Gf2Vec) -> Result<Gf2Vec, AlgebraError> {
        if v.len() != self.cols {
            return Err(AlgebraError::DimensionMismatch(format!(
                "matrix has {} columns, vector has {} entries",
                self.cols,
                v.len()
            )));
        }
        let mut out = Gf2Vec::zeros(self.rows);
        for r in 0..self.rows {
            let mut acc = 0u64;
            for (a, b) in self.data[r].limbs.iter().zip(&v.limbs) {
                acc ^= a & b;
            }
            out.set(r, acc.count_ones() % 2 == 1);
        }
        Ok(out)
    }

    /// In-place reduction to reduced row echelon form, processing columns left
    /// to right. Returns the pivot column of each pivot row, in order.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..self.cols {
            let Some(r) = (next_row..self.rows).find(|&r| self.data[r].get(col)) else {
                continue;
            };
            self.data.swap(next_row, r);
            let pivot_row = self.data[next_row].clone();
            for (r, row) in self.data.iter_mut().enumerate() {
                if r != next_row && row.get(col) {
                    row.xor_assign(&pivot_row);
                }
            }
            pivots.push(col);
            next_row += 1;
            if next_row == self.rows {
                break;
            }
        }
        pivots
    }
}

/// Outcome of a linear solve: either a canonical solution or a certificate
/// that none exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Solution(Gf2Vec),
    NoSolution,
}

/// The system `M x = rhs` over GF(2). Columns are candidate basis elements in a
/// fixed order; rows are constraints.
#[derive(Clone, Debug)]
pub struct LinearSystemGf2 {
    matrix: Gf2Matrix,
    rhs: Gf2Vec,
}

impl LinearSystemGf2 {
    pub fn new(matrix: Gf2Matrix, rhs: Gf2Vec) -> Result<Self, AlgebraError> {
        if rhs.len() != matrix.rows() {
            return Err(AlgebraError::DimensionMismatch(format!(
                "matrix has {} rows, rhs has {} entries",
                matrix.rows(),
                rhs.len()
            )));
        }
        Ok(LinearSystemGf2 { matrix, rhs })
    }

    /// Solve the system. When several solutions exist the returned one is
    /// canonical: its coefficient vector is lexicographically smallest under
    /// the fixed column order (0 preferred on earlier columns). Computed as
    /// the particular RREF solution reduced to the lex-minimum of its affine
    /// coset via a row-reduced null-space basis.
    pub fn solve(&self) -> SolveOutcome {
        let cols = self.matrix.cols();
        // Augmented elimination.
        let mut aug = Gf2Matrix::zeros(self.matrix.rows(), cols + 1);
        for r in 0..self.matrix.rows() {
            let mut row = Gf2Vec::zeros(cols + 1);
            for c in self.matrix.row(r).iter_ones() {
                row.set(c, true);
            }
            row.set(cols, self.rhs.get(r));
            aug.data[r] = row;
        }
        let pivots = aug.rref();
        if pivots.contains(&cols) {
            return SolveOutcome::NoSolution;
        }
        let mut is_pivot = vec![false; cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        // Particular solution: free variables 0.
        let mut x = Gf2Vec::zeros(cols);
        for (row, &col) in pivots.iter().enumerate() {
            x.set(col, aug.get(row, cols));
        }
        // Null-space basis, one vector per free column.
        let mut null_basis: Vec<Gf2Vec> = Vec::new();
        for free in (0..cols).filter(|&c| !is_pivot[c]) {
            let mut v = Gf2Vec::zeros(cols);
            v.set(free, true);
            for (row, &col) in pivots.iter().enumerate() {
                if aug.get(row, free) {
                    v.set(col, true);
                }
            }
            null_basis.push(v);
        }
        // Row-reduce the basis so leading indices are distinct and each vector
        // vanishes strictly before its leading index, then greedily clear the
        // earliest coordinates of x. This yields the lex-minimal coset element.
        let mut reduced: Vec<Gf2Vec> = Vec::new();
        for mut v in null_basis {
            while let Some(lead) = v.leading() {
                match reduced.iter().find(|u| u.leading() == Some(lead)) {
                    Some(u) => {
                        let u = u.clone();
                        v.xor_assign(&u);
                    }
                    None => {
                        reduced.push(v);
                        break;
                    }
                }
            }
        }
        reduced.sort_by_key(|v| v.leading());
        for v in &reduced {
            let lead = v.leading().expect("reduced basis vectors are nonzero");
            if x.get(lead) {
                x.xor_assign(v);
            }
        }
        debug_assert_eq!(self.matrix.mul_vec(&x).unwrap(), self.rhs);
        SolveOutcome::Solution(x)
    }

    /// Dimension of the solution space (number of free columns), independent
    /// of the right-hand side.
    pub fn nullity(&self) -> usize {
        let mut m = self.matrix.clone();
        let pivots = m.rref();
        self.matrix.cols() - pivots.len()
    }
}

/// A basis of the null space of a matrix, one vector per free column.
pub fn null_space_basis(matrix: &Gf2Matrix) -> Vec<Gf2Vec> {
    let cols = matrix.cols();
    let mut m = matrix.clone();
    let pivots = m.rref();
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = Gf2Vec::zeros(cols);
        v.set(free, true);
        for (row, &col) in pivots.iter().enumerate() {
            if m.get(row, free) {
                v.set(col, true);
            }
        }
        basis.push(v);
    }
    basis
}
