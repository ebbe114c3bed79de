//! Diagonalization of matrices over `Z/N` by unimodular row and column
//! operations.
//!
//! `Z/N` is a principal ideal ring, so Bezout combinations
//! `[s t; -b/g a/g]` (determinant 1) clear a row or column against a pivot.
//! The operations are recorded rather than accumulated into dense transform
//! matrices, and replayed on vectors on demand. Pivoting is deterministic.

use crate::scalar::gcd;

/// Extended gcd over `i128`: returns `(g, s, t)` with `s·a + t·b = g >= 0`.
pub(crate) fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, s, t) = ext_gcd(b, a.rem_euclid(b));
        (g, t, s - (a.div_euclid(b)) * t)
    }
}

/// Inverse of `a` mod `m` when `gcd(a, m) = 1`.
pub(crate) fn inv_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (g, s, _) = ext_gcd(a as i128, m as i128);
    (g == 1).then(|| s.rem_euclid(m as i128) as u64)
}

/// A 2×2 operation on indices `(p, q)`:
/// `new_p = m[0]·p + m[1]·q`, `new_q = m[2]·p + m[3]·q`. Determinant ±1.
#[derive(Clone, Copy, Debug)]
struct Op {
    p: usize,
    q: usize,
    m: [u64; 4],
}

/// Dense row-major matrix over `Z/N`.
#[derive(Clone, Debug)]
pub struct ZnMatrix {
    pub rows: usize,
    pub cols: usize,
    pub modulus: u64,
    pub data: Vec<u64>,
}

impl ZnMatrix {
    pub fn zeros(rows: usize, cols: usize, modulus: u64) -> Self {
        ZnMatrix { rows, cols, modulus, data: vec![0; rows * cols] }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.modulus;
    }

    /// Adds a signed integer to an entry.
    pub fn add(&mut self, i: usize, j: usize, v: i64) {
        let n = self.modulus as i128;
        let cur = self.data[i * self.cols + j] as i128;
        self.data[i * self.cols + j] = (cur + v as i128).rem_euclid(n) as u64;
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }
}

/// Result of diagonalizing `M`: `L·M·R = diag(d_0, .., d_{r-1}, 0, ..)`.
#[derive(Clone, Debug)]
pub struct Diagonalization {
    pub rows: usize,
    pub cols: usize,
    pub modulus: u64,
    /// Nonzero pivots in order; their count is the rank.
    pub diag: Vec<u64>,
    row_ops: Vec<Op>,
    col_ops: Vec<Op>,
}

fn mulmod(a: u64, b: u64, n: u64) -> u64 {
    (a as u128 * b as u128 % n as u128) as u64
}

fn apply_pair(v: &mut [u64], op: &Op, n: u64) {
    let (x, y) = (v[op.p], v[op.q]);
    v[op.p] = (mulmod(op.m[0], x, n) + mulmod(op.m[1], y, n)) % n;
    v[op.q] = (mulmod(op.m[2], x, n) + mulmod(op.m[3], y, n)) % n;
}

fn inverse_op(op: &Op, n: u64) -> Op {
    let [a, b, c, d] = op.m;
    let det = (mulmod(a, d, n) + n - mulmod(b, c, n)) % n;
    // det is ±1, so it is its own inverse
    let neg = |x: u64| (n - x % n) % n;
    Op {
        p: op.p,
        q: op.q,
        m: [mulmod(det, d, n), mulmod(det, neg(b), n), mulmod(det, neg(c), n), mulmod(det, a, n)],
    }
}

impl Diagonalization {
    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// `L·b` for a vector of length `rows`.
    pub fn apply_left(&self, b: &mut [u64]) {
        for op in &self.row_ops {
            apply_pair(b, op, self.modulus);
        }
    }

    /// `R·y` for a vector of length `cols`.
    pub fn apply_right(&self, y: &mut [u64]) {
        let n = self.modulus;
        for op in self.col_ops.iter().rev() {
            // R = E_1 E_2 .. E_k; column op E acts on a vector as the transpose block
            let t = Op { p: op.p, q: op.q, m: [op.m[0], op.m[2], op.m[1], op.m[3]] };
            apply_pair(y, &t, n);
        }
    }

    /// `R⁻¹·x` for a vector of length `cols`.
    pub fn apply_right_inverse(&self, x: &mut [u64]) {
        let n = self.modulus;
        for op in &self.col_ops {
            let t = Op { p: op.p, q: op.q, m: [op.m[0], op.m[2], op.m[1], op.m[3]] };
            apply_pair(x, &inverse_op(&t, n), n);
        }
    }
}

/// Diagonalizes `m` over `Z/N` in place, recording the operations used.
pub fn diagonalize(mut m: ZnMatrix) -> Diagonalization {
    let n = m.modulus;
    let (rows, cols) = (m.rows, m.cols);
    let mut row_ops = Vec::new();
    let mut col_ops = Vec::new();
    let mut diag = Vec::new();

    let row_op = |m: &mut ZnMatrix, op: Op, from: usize| {
        for j in from..m.cols {
            let (x, y) = (m.get(op.p, j), m.get(op.q, j));
            m.data[op.p * m.cols + j] = (mulmod(op.m[0], x, n) + mulmod(op.m[1], y, n)) % n;
            m.data[op.q * m.cols + j] = (mulmod(op.m[2], x, n) + mulmod(op.m[3], y, n)) % n;
        }
    };
    let col_op = |m: &mut ZnMatrix, op: Op, from: usize| {
        for i in from..m.rows {
            let (x, y) = (m.get(i, op.p), m.get(i, op.q));
            m.data[i * m.cols + op.p] = (mulmod(op.m[0], x, n) + mulmod(op.m[1], y, n)) % n;
            m.data[i * m.cols + op.q] = (mulmod(op.m[2], x, n) + mulmod(op.m[3], y, n)) % n;
        }
    };
    // Operation clearing `b` against pivot `a`, as integers in [0, n).
    let clearing = |a: u64, b: u64| -> [u64; 4] {
        if a != 0 && b.is_multiple_of(a) {
            [1, 0, (n - (b / a) % n) % n, 1]
        } else {
            let (g, s, t) = ext_gcd(a as i128, b as i128);
            let red = |x: i128| x.rem_euclid(n as i128) as u64;
            [red(s), red(t), red(-(b as i128) / g), red(a as i128 / g)]
        }
    };

    for t in 0..rows.min(cols) {
        let mut best: Option<(u64, u64, usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let v = m.get(i, j);
                if v != 0 {
                    let key = (gcd(v, n), v, i, j);
                    if best.is_none_or(|b| key < b) {
                        best = Some(key);
                    }
                }
            }
        }
        let Some((_, _, pi, pj)) = best else { break };
        if pi != t {
            let op = Op { p: t, q: pi, m: [0, 1, 1, 0] };
            row_op(&mut m, op, 0);
            row_ops.push(op);
        }
        if pj != t {
            let op = Op { p: t, q: pj, m: [0, 1, 1, 0] };
            col_op(&mut m, op, 0);
            col_ops.push(op);
        }
        loop {
            for i in t + 1..rows {
                let b = m.get(i, t);
                if b != 0 {
                    let op = Op { p: t, q: i, m: clearing(m.get(t, t), b) };
                    row_op(&mut m, op, t);
                    row_ops.push(op);
                }
            }
            let mut dirty = false;
            for j in t + 1..cols {
                let b = m.get(t, j);
                if b != 0 {
                    let op = Op { p: t, q: j, m: clearing(m.get(t, t), b) };
                    col_op(&mut m, op, t);
                    col_ops.push(op);
                }
            }
            for i in t + 1..rows {
                if m.get(i, t) != 0 {
                    dirty = true;
                    break;
                }
            }
            if !dirty {
                break;
            }
        }
        let p = m.get(t, t);
        if p == 0 {
            break;
        }
        diag.push(p);
    }
    Diagonalization { rows, cols, modulus: n, diag, row_ops, col_ops }
}

/// Invariant factors (each dividing the next, all `>= 2`) of `⊕ Z/o_i`.
pub fn invariant_factors(orders: &[u64]) -> Vec<u64> {
    let mut by_prime: std::collections::BTreeMap<u64, Vec<u64>> = Default::default();
    for &o in orders {
        let mut x = o;
        let mut p = 2;
        while x > 1 {
            if p * p > x {
                p = x;
            }
            if x % p == 0 {
                let mut q = 1;
                while x % p == 0 {
                    x /= p;
                    q *= p;
                }
                by_prime.entry(p).or_default().push(q);
            }
            p += 1;
        }
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut factors = vec![1u64; len];
    for powers in by_prime.values_mut() {
        powers.sort_unstable_by(|a, b| b.cmp(a));
        for (i, q) in powers.iter().enumerate() {
            factors[len - 1 - i] *= q;
        }
    }
    factors
}
