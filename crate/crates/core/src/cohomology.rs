//! Cohomology `H^k(G; Z/N)` of normalized cochains, coboundary solving, and
//! the coefficient-enlargement triviality test.
//!
//! The differential restricted to normalized cochains is a matrix over
//! `Z/N` whose columns are the non-identity `k`-slots and whose rows are the
//! non-identity `(k+1)`-slots. Everything is read off its diagonalization.

use std::fmt;
use std::sync::Arc;

use crate::cochain::{decode, encode, table_len, Cochain};
use crate::error::{invalid, precondition, Error, Result};
use crate::group::FiniteGroup;
use crate::scalar::gcd;
use crate::snf::{diagonalize, inv_mod, invariant_factors, ZnMatrix};

/// Default bound on dense table sizes handed to the linear algebra.
pub const DEFAULT_GUARDRAIL: usize = 20000;

/// A finite abelian group by invariant factors; empty means trivial.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AbelianInvariants {
    pub factors: Vec<u64>,
}

impl AbelianInvariants {
    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Slot indices of `k`-tuples with no identity entry, in slot order.
fn nonidentity_slots(g: &FiniteGroup, k: usize) -> Vec<usize> {
    let n = g.order();
    let e = g.identity();
    let len = table_len(n, k).expect("slot count overflow");
    let mut x = vec![0; k];
    (0..len)
        .filter(|&i| {
            decode(i, n, k, &mut x);
            !x.contains(&e)
        })
        .collect()
}

/// Matrix of `d: C^k -> C^{k+1}` on normalized cochains mod `modulus`.
fn coboundary_matrix(g: &FiniteGroup, k: usize, modulus: u64) -> (ZnMatrix, Vec<usize>, Vec<usize>) {
    let n = g.order();
    let cols = nonidentity_slots(g, k);
    let rows = nonidentity_slots(g, k + 1);
    let col_len = table_len(n, k).unwrap();
    let mut col_of = vec![usize::MAX; col_len];
    for (j, &s) in cols.iter().enumerate() {
        col_of[s] = j;
    }
    let mut m = ZnMatrix::zeros(rows.len(), cols.len(), modulus);
    let mut x = vec![0; k + 1];
    let mut y = vec![0; k];
    for (r, &slot) in rows.iter().enumerate() {
        decode(slot, n, k + 1, &mut x);
        let term = |args: &[usize], sign: i64, m: &mut ZnMatrix| {
            let c = col_of[encode(args, n)];
            if c != usize::MAX {
                m.add(r, c, sign);
            }
        };
        term(&x[1..], 1, &mut m);
        for i in 0..k {
            y[..i].copy_from_slice(&x[..i]);
            y[i] = g.mul(x[i], x[i + 1]);
            y[i + 1..].copy_from_slice(&x[i + 2..]);
            term(&y, if i % 2 == 0 { -1 } else { 1 }, &mut m);
        }
        term(&x[..k], if k.is_multiple_of(2) { -1 } else { 1 }, &mut m);
    }
    (m, cols, rows)
}

fn guard(order: usize, degree: usize, guardrail: usize, what: &str) -> Result<()> {
    match table_len(order, degree) {
        Some(s) if s <= guardrail => Ok(()),
        _ => Err(Error::ResourceLimit(format!(
            "{what} needs {order}^{degree} table entries, above the guardrail of {guardrail}"
        ))),
    }
}

/// `H^k(G; Z/N)` with the default guardrail.
pub fn cohomology(g: &FiniteGroup, modulus: u64, k: usize) -> Result<AbelianInvariants> {
    cohomology_with_guardrail(g, modulus, k, DEFAULT_GUARDRAIL)
}

/// `H^k(G; Z/N) = ker d_k / im d_{k-1}`; requires `|G|^k <= guardrail`.
pub fn cohomology_with_guardrail(
    g: &FiniteGroup,
    modulus: u64,
    k: usize,
    guardrail: usize,
) -> Result<AbelianInvariants> {
    if modulus == 0 {
        return Err(invalid("modulus must be positive"));
    }
    guard(g.order(), k, guardrail, "cohomology")?;
    let n = modulus;
    let (dk, cols, _) = coboundary_matrix(g, k, n);
    let dim = cols.len();
    let diag = diagonalize(dk);
    // Kernel in y = R⁻¹x coordinates: y_i ∈ step_i·Z/N, a cyclic group of order ord_i.
    let mut step = vec![1u64; dim];
    let mut ord = vec![n; dim];
    for (i, &d) in diag.diag.iter().enumerate() {
        let o = gcd(d, n);
        ord[i] = o;
        step[i] = n / o;
    }
    let mut rel_cols: Vec<Vec<u64>> = Vec::new();
    if k >= 1 {
        let (dprev, _, _) = coboundary_matrix(g, k - 1, n);
        for j in 0..dprev.cols {
            let mut y = dprev.column(j);
            diag.apply_right_inverse(&mut y);
            let c: Vec<u64> = (0..dim)
                .map(|i| {
                    debug_assert_eq!(y[i] % step[i], 0, "image escapes the kernel");
                    (y[i] / step[i]) % n
                })
                .collect();
            if c.iter().any(|&v| v != 0) {
                rel_cols.push(c);
            }
        }
    }
    for i in 0..dim {
        let mut c = vec![0; dim];
        c[i] = ord[i] % n;
        if c[i] != 0 {
            rel_cols.push(c);
        }
    }
    let mut rel = ZnMatrix::zeros(dim, rel_cols.len(), n);
    for (j, c) in rel_cols.iter().enumerate() {
        for (i, &v) in c.iter().enumerate() {
            rel.set(i, j, v);
        }
    }
    let rd = diagonalize(rel);
    let mut orders: Vec<u64> = rd.diag.iter().map(|&e| gcd(e, n)).collect();
    orders.extend(std::iter::repeat_n(n, dim - rd.rank()));
    Ok(AbelianInvariants { factors: invariant_factors(&orders) })
}

/// Finds a normalized `β` with values in `(1/N)Z/Z` and `dβ = φ`, using the
/// default guardrail.
pub fn coboundary_solve(phi: &Cochain, modulus: u64) -> Result<Option<Cochain>> {
    coboundary_solve_with_guardrail(phi, modulus, DEFAULT_GUARDRAIL)
}

/// As [`coboundary_solve`]; requires `|G|^(k-1) <= guardrail`.
pub fn coboundary_solve_with_guardrail(phi: &Cochain, modulus: u64, guardrail: usize) -> Result<Option<Cochain>> {
    let k = phi.degree();
    if k == 0 {
        return Err(invalid("coboundary_solve needs degree >= 1"));
    }
    if modulus == 0 {
        return Err(invalid("modulus must be positive"));
    }
    let g: &Arc<FiniteGroup> = phi.group();
    guard(g.order(), k - 1, guardrail, "coboundary_solve")?;
    if !phi.is_cocycle() {
        return Err(precondition("cochain is not a cocycle"));
    }
    let n = modulus;
    let (m, cols, rows) = coboundary_matrix(g, k - 1, n);
    let mut b = Vec::with_capacity(rows.len());
    for &slot in &rows {
        match phi.value_at(slot).residue(n) {
            Some(r) => b.push(r),
            None => return Ok(None),
        }
    }
    let diag = diagonalize(m);
    diag.apply_left(&mut b);
    if b[diag.rank()..].iter().any(|&v| v != 0) {
        return Ok(None);
    }
    let mut y = vec![0u64; cols.len()];
    for (i, &d) in diag.diag.iter().enumerate() {
        let gi = gcd(d, n);
        if b[i] % gi != 0 {
            return Ok(None);
        }
        let nn = n / gi;
        let inv = inv_mod((d / gi) % nn, nn).expect("d/g is a unit mod N/g");
        y[i] = ((b[i] / gi) as u128 * inv as u128 % nn as u128) as u64;
    }
    diag.apply_right(&mut y);
    let mut data = vec![0u64; table_len(g.order(), k - 1).unwrap()];
    for (j, &slot) in cols.iter().enumerate() {
        data[slot] = y[j];
    }
    let beta = Cochain::from_residues(g.clone(), k - 1, n, data)?;
    assert!(beta.differential() == *phi, "solver produced a non-solution");
    Ok(Some(beta))
}

/// Whether the `Z/N`-valued cocycle `φ` is a coboundary in `k^×`-valued
/// cochains, decided by solving with modulus `N·|G|`.
///
/// A `k^×`-trivialization of a `μ_N`-valued cocycle on a finite group can be
/// averaged (transfer argument) to one with values in `μ_{N·|G|}`.
pub fn cx_triviality_test(phi: &Cochain) -> Result<bool> {
    cx_triviality_test_with_guardrail(phi, DEFAULT_GUARDRAIL)
}

pub fn cx_triviality_test_with_guardrail(phi: &Cochain, guardrail: usize) -> Result<bool> {
    let m = phi
        .modulus()
        .checked_mul(phi.group().order() as u64)
        .ok_or_else(|| invalid("enlarged modulus overflows"))?;
    Ok(coboundary_solve_with_guardrail(phi, m, guardrail)?.is_some())
}
