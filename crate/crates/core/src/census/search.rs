//! Column-by-column backtracking over the elements of a classical matrix group.
//!
//! Column `j` of an element `g` is `g e_j`. For form-preserving groups, a new
//! column `x` must satisfy `B(c_i, x) = μ B(e_i, e_j)` for every earlier column
//! `c_i`, which is a linear system in `x`; its solution set is enumerated
//! directly, then filtered by the quadratic condition `B(x, x) = μ B(e_j, e_j)`.
//! Every candidate column must also be independent of the earlier ones.

use crate::field::{inv_mod, mul_mod, pow_mod, MAX_MATRIX_DIM};
use crate::groups::{FormSpec, GroupFamily};

pub(crate) type Vector = [u32; MAX_MATRIX_DIM];
pub(crate) type Columns = [Vector; MAX_MATRIX_DIM];

#[derive(Debug, Clone)]
pub(crate) struct Searcher {
    pub dim: usize,
    pub p: u32,
    family: GroupFamily,
    half: u64,
    gram: Option<Columns>,
    skew: bool,
}

/// Row-echelon basis of the span of the columns chosen so far.
#[derive(Clone, Copy)]
struct Echelon {
    rows: Columns,
    pivots: [usize; MAX_MATRIX_DIM],
    len: usize,
}

impl Echelon {
    fn new() -> Self {
        Echelon {
            rows: [[0; MAX_MATRIX_DIM]; MAX_MATRIX_DIM],
            pivots: [0; MAX_MATRIX_DIM],
            len: 0,
        }
    }

    /// Adds `x` if it is independent of the current span.
    fn try_push(&mut self, x: &Vector, dim: usize, p: u32) -> bool {
        let mut r = *x;
        for i in 0..self.len {
            let c = r[self.pivots[i]];
            if c != 0 {
                let row = &self.rows[i];
                for k in 0..dim {
                    r[k] = (r[k] + p * p - c * row[k]) % p;
                }
            }
        }
        let Some(piv) = (0..dim).find(|&k| r[k] != 0) else {
            return false;
        };
        let inv = inv_mod(r[piv], p);
        for v in r.iter_mut().take(dim) {
            *v = mul_mod(*v, inv, p);
        }
        self.rows[self.len] = r;
        self.pivots[self.len] = piv;
        self.len += 1;
        true
    }
}

/// Solution set `particular + span(basis)` of a linear system over `F_p`.
struct AffineSpace {
    particular: Vector,
    basis: [Vector; MAX_MATRIX_DIM],
    free: usize,
}

/// Solves `rows[i] · x = rhs[i]` for `i < count`, returning `None` if inconsistent.
fn solve(rows: &Columns, rhs: &Vector, count: usize, dim: usize, p: u32) -> Option<AffineSpace> {
    let mut a = [[0u32; MAX_MATRIX_DIM + 1]; MAX_MATRIX_DIM];
    for i in 0..count {
        a[i][..dim].copy_from_slice(&rows[i][..dim]);
        a[i][dim] = rhs[i];
    }
    let mut pivot_cols = [usize::MAX; MAX_MATRIX_DIM];
    let mut rank = 0;
    for col in 0..dim {
        if rank == count {
            break;
        }
        let Some(pr) = (rank..count).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(pr, rank);
        let inv = inv_mod(a[rank][col], p);
        for v in a[rank].iter_mut().take(dim + 1) {
            *v = mul_mod(*v, inv, p);
        }
        for r in 0..count {
            if r != rank && a[r][col] != 0 {
                let f = a[r][col];
                for k in 0..=dim {
                    a[r][k] = (a[r][k] + p * p - f * a[rank][k]) % p;
                }
            }
        }
        pivot_cols[rank] = col;
        rank += 1;
    }
    if (rank..count).any(|r| a[r][dim] != 0) {
        return None;
    }
    let mut is_pivot = [false; MAX_MATRIX_DIM];
    let mut particular = [0u32; MAX_MATRIX_DIM];
    for r in 0..rank {
        is_pivot[pivot_cols[r]] = true;
        particular[pivot_cols[r]] = a[r][dim];
    }
    let mut basis = [[0u32; MAX_MATRIX_DIM]; MAX_MATRIX_DIM];
    let mut free = 0;
    for f in (0..dim).filter(|&c| !is_pivot[c]) {
        let b = &mut basis[free];
        b[f] = 1;
        for r in 0..rank {
            b[pivot_cols[r]] = (p - a[r][f]) % p;
        }
        free += 1;
    }
    Some(AffineSpace {
        particular,
        basis,
        free,
    })
}

/// Calls `visit` on every point of the affine space (odometer over free coordinates).
fn for_each_point(space: &AffineSpace, dim: usize, p: u32, mut visit: impl FnMut(&Vector)) {
    let mut x = space.particular;
    let mut digits = [0u32; MAX_MATRIX_DIM];
    loop {
        visit(&x);
        let mut i = 0;
        loop {
            if i == space.free {
                return;
            }
            let b = &space.basis[i];
            for k in 0..dim {
                x[k] = (x[k] + b[k]) % p;
            }
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

struct State {
    cols: Columns,
    /// `lin[i] = c_iᵀ B`
    lin: Columns,
    echelon: Echelon,
}

impl Searcher {
    pub fn new(family: GroupFamily, n: usize, p: u32, form: Option<&FormSpec>) -> Self {
        let dim = family.matrix_dim(n);
        debug_assert!(p < 1 << 12, "census arithmetic assumes small primes");
        let gram = form.map(|f| {
            let mut g = [[0u32; MAX_MATRIX_DIM]; MAX_MATRIX_DIM];
            for (r, row) in g.iter_mut().enumerate().take(dim) {
                for (c, v) in row.iter_mut().enumerate().take(dim) {
                    *v = f.gram.raw(r, c);
                }
            }
            g
        });
        Searcher {
            dim,
            p,
            family,
            half: n as u64,
            gram,
            skew: family.form_kind() == Some(crate::groups::FormKind::Symplectic),
        }
    }

    /// Similitude factors to iterate over.
    pub fn multipliers(&self) -> Vec<u32> {
        if self.family.is_similitude() {
            (1..self.p).collect()
        } else {
            vec![1]
        }
    }

    fn quadratic(&self, x: &Vector) -> u32 {
        let gram = self.gram.as_ref().expect("form");
        let (dim, p) = (self.dim, self.p);
        let mut acc = 0u64;
        for r in 0..dim {
            if x[r] == 0 {
                continue;
            }
            let mut row = 0u64;
            for c in 0..dim {
                row += gram[r][c] as u64 * x[c] as u64;
            }
            acc += x[r] as u64 * (row % p as u64);
        }
        (acc % p as u64) as u32
    }

    fn row_times_gram(&self, x: &Vector) -> Vector {
        let gram = self.gram.as_ref().expect("form");
        let mut out = [0u32; MAX_MATRIX_DIM];
        for c in 0..self.dim {
            let mut acc = 0u64;
            for r in 0..self.dim {
                acc += x[r] as u64 * gram[r][c] as u64;
            }
            out[c] = (acc % self.p as u64) as u32;
        }
        out
    }

    /// Candidate columns at `level` given the state, passed to `visit`.
    fn candidates(&self, level: usize, state: &State, mu: u32, mut visit: impl FnMut(&Vector)) {
        let (dim, p) = (self.dim, self.p);
        match &self.gram {
            None => {
                let all = AffineSpace {
                    particular: [0; MAX_MATRIX_DIM],
                    basis: std::array::from_fn(|i| {
                        let mut e = [0; MAX_MATRIX_DIM];
                        if i < dim {
                            e[i] = 1;
                        }
                        e
                    }),
                    free: dim,
                };
                for_each_point(&all, dim, p, |x| {
                    let mut ech = state.echelon;
                    if ech.try_push(x, dim, p) {
                        visit(x);
                    }
                });
            }
            Some(gram) => {
                let mut rhs = [0u32; MAX_MATRIX_DIM];
                for (i, v) in rhs.iter_mut().enumerate().take(level) {
                    *v = mul_mod(mu, gram[i][level], p);
                }
                let Some(space) = solve(&state.lin, &rhs, level, dim, p) else {
                    return;
                };
                let target = mul_mod(mu, gram[level][level], p);
                for_each_point(&space, dim, p, |x| {
                    if !self.skew && self.quadratic(x) != target {
                        return;
                    }
                    let mut ech = state.echelon;
                    if ech.try_push(x, dim, p) {
                        visit(x);
                    }
                });
            }
        }
    }

    /// Valid first columns for multiplier `mu`.
    pub fn first_columns(&self, mu: u32) -> Vec<Vector> {
        let state = State {
            cols: [[0; MAX_MATRIX_DIM]; MAX_MATRIX_DIM],
            lin: [[0; MAX_MATRIX_DIM]; MAX_MATRIX_DIM],
            echelon: Echelon::new(),
        };
        let mut out = Vec::new();
        self.candidates(0, &state, mu, |x| out.push(*x));
        out
    }

    /// Visits every element whose first column is `first`, with multiplier `mu`.
    /// Determinant conditions of the special and connected families are applied here.
    pub fn walk(&self, mu: u32, first: &Vector, visit: &mut impl FnMut(&Columns, u32)) {
        let mut state = State {
            cols: [[0; MAX_MATRIX_DIM]; MAX_MATRIX_DIM],
            lin: [[0; MAX_MATRIX_DIM]; MAX_MATRIX_DIM],
            echelon: Echelon::new(),
        };
        if !state.echelon.try_push(first, self.dim, self.p) {
            return;
        }
        state.cols[0] = *first;
        if self.dim == 1 {
            if self.det_condition_holds(&state.cols, mu) {
                visit(&state.cols, mu);
            }
            return;
        }
        if self.gram.is_some() {
            state.lin[0] = self.row_times_gram(first);
        }
        self.descend(1, &mut state, mu, visit);
    }

    fn descend(&self, level: usize, state: &mut State, mu: u32, visit: &mut impl FnMut(&Columns, u32)) {
        if level + 1 == self.dim {
            let mut cols = state.cols;
            self.candidates(level, state, mu, |x| {
                cols[level] = *x;
                if self.det_condition_holds(&cols, mu) {
                    visit(&cols, mu);
                }
            });
            return;
        }
        let mut chosen: Vec<Vector> = Vec::new();
        self.candidates(level, state, mu, |x| chosen.push(*x));
        let saved = state.echelon;
        for x in &chosen {
            state.echelon = saved;
            state.echelon.try_push(x, self.dim, self.p);
            state.cols[level] = *x;
            if self.gram.is_some() {
                state.lin[level] = self.row_times_gram(x);
            }
            self.descend(level + 1, state, mu, visit);
        }
        state.echelon = saved;
    }

    fn det_condition_holds(&self, cols: &Columns, mu: u32) -> bool {
        if self.family.is_special() {
            det(cols, self.dim, self.p) == 1
        } else if self.family.is_connected_similitude() {
            det(cols, self.dim, self.p) == pow_mod(mu, self.half, self.p)
        } else {
            true
        }
    }
}

/// Determinant of the matrix whose columns are `cols` (equal to that of its transpose).
pub(crate) fn det(cols: &Columns, dim: usize, p: u32) -> u32 {
    let mut m = *cols;
    let mut det = 1u32;
    for c in 0..dim {
        let Some(pr) = (c..dim).find(|&r| m[r][c] != 0) else {
            return 0;
        };
        if pr != c {
            m.swap(pr, c);
            det = (p - det) % p;
        }
        let pv = m[c][c];
        det = mul_mod(det, pv, p);
        let inv = inv_mod(pv, p);
        for r in (c + 1)..dim {
            let f = mul_mod(m[r][c], inv, p);
            if f != 0 {
                for k in c..dim {
                    m[r][k] = (m[r][k] + p * p - f * m[c][k]) % p;
                }
            }
        }
    }
    det
}

/// Returns `λ` if `g² = λ I`, where `g` has columns `cols`.
#[inline]
pub(crate) fn square_scalar(cols: &Columns, dim: usize, p: u32) -> Option<u32> {
    let mut lambda = None;
    for c in 0..dim {
        // column c of g² is g · cols[c]
        let col = &cols[c];
        for r in 0..dim {
            let mut acc = 0u32;
            for k in 0..dim {
                acc += cols[k][r] * col[k];
            }
            let v = acc % p;
            if r == c {
                match lambda {
                    None => lambda = Some(v),
                    Some(l) if l != v => return None,
                    _ => {}
                }
            } else if v != 0 {
                return None;
            }
        }
    }
    lambda
}

/// `dim ker(g - c I)`
pub(crate) fn eigenspace_dim(cols: &Columns, dim: usize, p: u32, c: u32) -> usize {
    let mut m = *cols;
    for (i, row) in m.iter_mut().enumerate().take(dim) {
        row[i] = (row[i] + p - c) % p;
    }
    let mut rank = 0;
    for col in 0..dim {
        let Some(pr) = (rank..dim).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(pr, rank);
        let inv = inv_mod(m[rank][col], p);
        for r in (rank + 1)..dim {
            let f = mul_mod(m[r][col], inv, p);
            if f != 0 {
                for k in col..dim {
                    m[r][k] = (m[r][k] + p * p - f * m[rank][k]) % p;
                }
            }
        }
        rank += 1;
    }
    dim - rank
}
