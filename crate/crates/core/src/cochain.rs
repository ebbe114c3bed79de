//! Normalized cochains on finite groups with values in the `N`-torsion of
//! `Q/Z`, under the trivial action on coefficients.
//!
//! A `k`-cochain is a dense table of length `|G|^k`; the slot of
//! `(g_1, .., g_k)` is `Σ g_i·|G|^(k-1-i)`, leftmost argument most
//! significant. Values are stored as residues mod the cochain's modulus.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{invalid, precondition, Result};
use crate::group::{ExtensionData, FiniteGroup, GroupHom};
use crate::scalar::{lcm, UnitScalar};

const PAR_THRESHOLD: usize = 4096;

#[derive(Clone)]
pub struct Cochain {
    group: Arc<FiniteGroup>,
    degree: usize,
    modulus: u64,
    data: Vec<u64>,
}

impl fmt::Debug for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nonzero: Vec<String> = self
            .nonzero_entries()
            .map(|(args, v)| format!("{args:?}={v}"))
            .collect();
        write!(
            f,
            "Cochain(order={}, degree={}, modulus={}, {{{}}})",
            self.group.order(),
            self.degree,
            self.modulus,
            nonzero.join(", ")
        )
    }
}

impl PartialEq for Cochain {
    /// Equality as functions `G^k -> Q/Z`; the declared modulus is ignored.
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree
            && *self.group == *other.group
            && (0..self.data.len()).all(|i| self.value_at(i) == other.value_at(i))
    }
}

impl Eq for Cochain {}

/// Decodes a slot index into its argument tuple.
pub(crate) fn decode(mut idx: usize, order: usize, degree: usize, out: &mut [usize]) {
    for i in (0..degree).rev() {
        out[i] = idx % order;
        idx /= order;
    }
}

pub(crate) fn encode(args: &[usize], order: usize) -> usize {
    args.iter().fold(0, |acc, &a| acc * order + a)
}

/// `order^degree`, or `None` on overflow.
pub(crate) fn table_len(order: usize, degree: usize) -> Option<usize> {
    order.checked_pow(degree as u32)
}

impl Cochain {
    pub fn zero(group: Arc<FiniteGroup>, degree: usize, modulus: u64) -> Self {
        assert!(modulus > 0, "modulus must be positive");
        let len = table_len(group.order(), degree).expect("cochain table too large");
        Cochain { group, degree, modulus, data: vec![0; len] }
    }

    /// Builds a cochain from `f`, which is consulted only on slots whose
    /// arguments are all non-identity; the rest are 0 by normalization.
    ///
    /// Fails if some value is not a multiple of `1/modulus`.
    pub fn from_fn(
        group: Arc<FiniteGroup>,
        degree: usize,
        modulus: u64,
        mut f: impl FnMut(&[usize]) -> UnitScalar,
    ) -> Result<Self> {
        if modulus == 0 {
            return Err(invalid("modulus must be positive"));
        }
        let mut c = Cochain::zero(group, degree, modulus);
        let (n, e) = (c.group.order(), c.group.identity());
        let mut args = vec![0; degree];
        for i in 0..c.data.len() {
            decode(i, n, degree, &mut args);
            if args.contains(&e) {
                continue;
            }
            let v = f(&args);
            c.data[i] = v
                .residue(modulus)
                .ok_or_else(|| invalid(format!("value {v} at {args:?} is not a multiple of 1/{modulus}")))?;
        }
        Ok(c)
    }

    /// Builds a cochain from explicit nonzero entries.
    ///
    /// Rejects nonzero values at slots with an identity argument.
    pub fn from_entries(
        group: Arc<FiniteGroup>,
        degree: usize,
        modulus: u64,
        entries: impl IntoIterator<Item = (Vec<usize>, UnitScalar)>,
    ) -> Result<Self> {
        if modulus == 0 {
            return Err(invalid("modulus must be positive"));
        }
        let mut c = Cochain::zero(group, degree, modulus);
        for (args, v) in entries {
            c.set(&args, v)?;
        }
        Ok(c)
    }

    /// Builds a cochain from residues mod `modulus`, one per slot.
    pub fn from_residues(group: Arc<FiniteGroup>, degree: usize, modulus: u64, data: Vec<u64>) -> Result<Self> {
        if modulus == 0 {
            return Err(invalid("modulus must be positive"));
        }
        if Some(data.len()) != table_len(group.order(), degree) {
            return Err(invalid("residue table has the wrong length"));
        }
        let c = Cochain { group, degree, modulus, data: data.into_iter().map(|r| r % modulus).collect() };
        if !c.is_normalized() {
            return Err(precondition("cochain is not normalized"));
        }
        Ok(c)
    }

    /// The carry cocycle on a fresh `Z_m`: `c(a,b) = floor((a+b)/m)/m`.
    pub fn carry(m: usize) -> Result<Self> {
        let g = Arc::new(FiniteGroup::cyclic(m)?);
        Ok(Self::carry_on(g))
    }

    /// The carry cocycle on a group whose table is that of `Z_m`.
    pub(crate) fn carry_on(g: Arc<FiniteGroup>) -> Self {
        let m = g.order();
        Cochain::from_fn(g, 2, m as u64, |x| UnitScalar::new(((x[0] + x[1]) / m) as i64, m as u64))
            .expect("carry values are multiples of 1/m")
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn slot(&self, args: &[usize]) -> usize {
        assert_eq!(args.len(), self.degree, "wrong number of arguments");
        encode(args, self.group.order())
    }

    pub fn args(&self, slot: usize) -> Vec<usize> {
        let mut out = vec![0; self.degree];
        decode(slot, self.group.order(), self.degree, &mut out);
        out
    }

    #[inline]
    pub fn value(&self, args: &[usize]) -> UnitScalar {
        self.value_at(self.slot(args))
    }

    #[inline]
    pub fn value_at(&self, slot: usize) -> UnitScalar {
        UnitScalar::from_residue(self.data[slot], self.modulus)
    }

    /// Residue mod the cochain's modulus at `slot`.
    pub fn residue_at(&self, slot: usize) -> u64 {
        self.data[slot]
    }

    pub fn residues(&self) -> &[u64] {
        &self.data
    }

    /// Sets one value; identity slots may only be set to 0.
    pub fn set(&mut self, args: &[usize], v: UnitScalar) -> Result<()> {
        if args.len() != self.degree {
            return Err(invalid(format!("expected {} arguments, got {}", self.degree, args.len())));
        }
        if let Some(&a) = args.iter().find(|&&a| a >= self.group.order()) {
            return Err(invalid(format!("argument {a} out of range")));
        }
        if !v.is_zero() && args.contains(&self.group.identity()) {
            return Err(precondition(format!("nonzero value at identity slot {args:?}")));
        }
        let r = v
            .residue(self.modulus)
            .ok_or_else(|| invalid(format!("value {v} is not a multiple of 1/{}", self.modulus)))?;
        let s = self.slot(args);
        self.data[s] = r;
        Ok(())
    }

    /// Nonzero values as `(args, value)`, in slot order.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (Vec<usize>, UnitScalar)> + '_ {
        (0..self.data.len())
            .filter(|&i| self.data[i] != 0)
            .map(move |i| (self.args(i), self.value_at(i)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&r| r == 0)
    }

    /// Every slot with an identity argument holds 0.
    pub fn is_normalized(&self) -> bool {
        let (n, e) = (self.group.order(), self.group.identity());
        let mut args = vec![0; self.degree];
        (0..self.data.len()).all(|i| {
            decode(i, n, self.degree, &mut args);
            self.data[i] == 0 || !args.contains(&e)
        })
    }

    /// The same function viewed with a larger modulus (a multiple of the old one).
    pub fn with_modulus(&self, modulus: u64) -> Result<Self> {
        if modulus == 0 || !modulus.is_multiple_of(self.modulus) {
            return Err(invalid(format!("modulus {modulus} is not a multiple of {}", self.modulus)));
        }
        let f = modulus / self.modulus;
        Ok(Cochain {
            group: self.group.clone(),
            degree: self.degree,
            modulus,
            data: self.data.iter().map(|&r| r * f).collect(),
        })
    }

    fn check_same_shape(&self, other: &Cochain) -> Result<()> {
        if self.degree != other.degree || *self.group != *other.group {
            return Err(invalid("cochains live on different groups or degrees"));
        }
        Ok(())
    }

    fn combine(&self, other: &Cochain, sign: i64) -> Result<Cochain> {
        self.check_same_shape(other)?;
        let m = lcm(self.modulus, other.modulus);
        let (fa, fb) = (m / self.modulus, m / other.modulus);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| {
                let v = (a * fa) as i128 + sign as i128 * (b * fb) as i128;
                v.rem_euclid(m as i128) as u64
            })
            .collect();
        Ok(Cochain { group: self.group.clone(), degree: self.degree, modulus: m, data })
    }

    /// Pointwise sum; the result modulus is the lcm of the two.
    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.combine(other, -1)
    }

    pub fn neg(&self) -> Cochain {
        let m = self.modulus;
        Cochain {
            group: self.group.clone(),
            degree: self.degree,
            modulus: m,
            data: self.data.iter().map(|&r| (m - r) % m).collect(),
        }
    }

    /// Integer multiple `n·f`.
    pub fn times(&self, n: i64) -> Cochain {
        let m = self.modulus as i128;
        Cochain {
            group: self.group.clone(),
            degree: self.degree,
            modulus: self.modulus,
            data: self.data.iter().map(|&r| (r as i128 * n as i128).rem_euclid(m) as u64).collect(),
        }
    }

    /// The differential
    /// `df(g_1..g_{k+1}) = f(g_2..) + Σ_i (-1)^i f(..g_i g_{i+1}..) + (-1)^{k+1} f(g_1..g_k)`.
    pub fn differential(&self) -> Cochain {
        let k = self.degree;
        let n = self.group.order();
        let m = self.modulus as i64;
        let g = &self.group;
        let len = table_len(n, k + 1).expect("cochain table too large");
        let eval = |idx: usize| -> u64 {
            let mut x = vec![0; k + 1];
            decode(idx, n, k + 1, &mut x);
            let mut s = self.data[encode(&x[1..], n)] as i64;
            let mut y = vec![0; k];
            for i in 0..k {
                y[..i].copy_from_slice(&x[..i]);
                y[i] = g.mul(x[i], x[i + 1]);
                y[i + 1..].copy_from_slice(&x[i + 2..]);
                let v = self.data[encode(&y, n)] as i64;
                if i % 2 == 0 {
                    s -= v;
                } else {
                    s += v;
                }
            }
            let last = self.data[encode(&x[..k], n)] as i64;
            if k.is_multiple_of(2) {
                s -= last;
            } else {
                s += last;
            }
            s.rem_euclid(m) as u64
        };
        let data = if len >= PAR_THRESHOLD {
            (0..len).into_par_iter().map(eval).collect()
        } else {
            (0..len).map(eval).collect()
        };
        Cochain { group: self.group.clone(), degree: k + 1, modulus: self.modulus, data }
    }

    pub fn is_cocycle(&self) -> bool {
        self.differential().is_zero()
    }

    /// Cup product over `Z_L`, `L = lcm` of the two moduli:
    /// `(f⌣g)(x_1..x_{k+m}) = (L·f(x_1..x_k))·(L·g(x_{k+1}..))/L`.
    pub fn cup(&self, other: &Cochain) -> Result<Cochain> {
        if *self.group != *other.group {
            return Err(invalid("cup product of cochains on different groups"));
        }
        let l = lcm(self.modulus, other.modulus);
        let (fa, fb) = (l / self.modulus, l / other.modulus);
        let n = self.group.order();
        let stride = other.data.len();
        let len = self.data.len() * stride;
        let eval = |idx: usize| -> u64 {
            let a = (self.data[idx / stride] * fa) as u128;
            let b = (other.data[idx % stride] * fb) as u128;
            (a * b % l as u128) as u64
        };
        let data = if len >= PAR_THRESHOLD {
            (0..len).into_par_iter().map(eval).collect()
        } else {
            (0..len).map(eval).collect()
        };
        debug_assert_eq!(Some(len), table_len(n, self.degree + other.degree));
        Ok(Cochain { group: self.group.clone(), degree: self.degree + other.degree, modulus: l, data })
    }

    /// `ρ^*f(h_1..h_k) = f(ρ(h_1)..ρ(h_k))`.
    pub fn pullback(&self, rho: &GroupHom) -> Result<Cochain> {
        if **rho.target() != *self.group {
            return Err(invalid("homomorphism target differs from the cochain's group"));
        }
        let src = rho.source().clone();
        let (ns, nt, k) = (src.order(), self.group.order(), self.degree);
        let len = table_len(ns, k).ok_or_else(|| invalid("pullback table too large"))?;
        let mut data = Vec::with_capacity(len);
        let mut x = vec![0; k];
        for i in 0..len {
            decode(i, ns, k, &mut x);
            x.iter_mut().for_each(|a| *a = rho.apply(*a));
            data.push(self.data[encode(&x, nt)]);
        }
        Ok(Cochain { group: src, degree: k, modulus: self.modulus, data })
    }

    /// Restriction to the kernel group of `ext`.
    pub fn restrict(&self, ext: &ExtensionData) -> Result<Cochain> {
        self.pullback(&ext.embedding())
    }
}

/// Free-function form of [`Cochain::differential`].
pub fn differential(f: &Cochain) -> Cochain {
    f.differential()
}

pub fn is_cocycle(f: &Cochain) -> bool {
    f.is_cocycle()
}

pub fn cup(f: &Cochain, g: &Cochain) -> Result<Cochain> {
    f.cup(g)
}

pub fn pullback(rho: &GroupHom, f: &Cochain) -> Result<Cochain> {
    f.pullback(rho)
}

pub fn restrict(f: &Cochain, ext: &ExtensionData) -> Result<Cochain> {
    f.restrict(ext)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(n).unwrap())
    }

    #[test]
    fn differential_of_zero_and_simple_cases() {
        let g = z(3);
        assert!(Cochain::zero(g.clone(), 2, 3).differential().is_zero());

        let f = Cochain::from_entries(z(2), 1, 2, [(vec![1], UnitScalar::new(1, 2))]).unwrap();
        let df = f.differential();
        assert_eq!(df.value(&[1, 1]), UnitScalar::ZERO);
        assert!(df.is_zero());

        let c = Cochain::carry(2).unwrap();
        assert_eq!(c.value(&[1, 1]), UnitScalar::new(1, 2));
        assert!(c.differential().is_zero());
        assert!(c.is_cocycle());
    }

    #[test]
    fn differential_matches_hand_formula_degree_one() {
        // df(a,b) = f(b) - f(ab) + f(a)
        let g = z(4);
        let f = Cochain::from_fn(g.clone(), 1, 8, |x| UnitScalar::new((x[0] * x[0]) as i64, 8)).unwrap();
        let df = f.differential();
        for a in 0..4 {
            for b in 0..4 {
                let want = f.value(&[b]) - f.value(&[(a + b) % 4]) + f.value(&[a]);
                assert_eq!(df.value(&[a, b]), want);
            }
        }
    }

    #[test]
    fn random_non_closed_cochain_detected() {
        let g = z(4);
        let f = Cochain::from_entries(g, 3, 4, [(vec![1, 1, 1], UnitScalar::new(1, 4))]).unwrap();
        assert!(!f.is_cocycle());
    }

    #[test]
    fn cup_values() {
        let c = Cochain::carry(2).unwrap();
        let cc = c.cup(&c).unwrap();
        assert_eq!(cc.degree(), 4);
        assert_eq!(cc.value(&[1, 1, 1, 1]), UnitScalar::new(1, 2));
        assert!(cc.is_cocycle());
        let zero = Cochain::zero(c.group().clone(), 1, 2);
        assert!(zero.cup(&c).unwrap().is_zero());
        let other = Cochain::carry(3).unwrap();
        assert!(c.cup(&other).is_err());
    }

    #[test]
    fn pullback_along_z4_to_z2() {
        let z4 = z(4);
        let c = Cochain::carry(2).unwrap();
        let rho = GroupHom::new(z4, c.group().clone(), vec![0, 1, 0, 1]).unwrap();
        let p = c.pullback(&rho).unwrap();
        assert_eq!(p.value(&[1, 1]), UnitScalar::new(1, 2));
        assert_eq!(p.value(&[3, 3]), UnitScalar::new(1, 2));
        assert!((0..4).all(|g| p.value(&[2, g]).is_zero()));
        assert!(p.is_normalized());
        let id = GroupHom::identity(c.group().clone());
        assert_eq!(c.pullback(&id).unwrap(), c);
    }

    #[test]
    fn set_rejects_identity_slots_and_bad_denominators() {
        let mut f = Cochain::zero(z(3), 2, 3);
        assert!(f.set(&[0, 1], UnitScalar::new(1, 3)).is_err());
        assert!(f.set(&[1, 1], UnitScalar::new(1, 2)).is_err());
        assert!(f.set(&[1, 2], UnitScalar::new(2, 3)).is_ok());
        assert!(f.set(&[0, 1], UnitScalar::ZERO).is_ok());
        assert!(Cochain::from_residues(z(2), 1, 2, vec![1, 0]).is_err());
    }

    #[test]
    fn arithmetic_and_modulus() {
        let c = Cochain::carry(2).unwrap();
        let c4 = c.with_modulus(4).unwrap();
        assert_eq!(c4, c);
        assert_eq!(c4.residues()[3], 2);
        assert!(c.with_modulus(3).is_err());
        assert!(c.add(&c).unwrap().is_zero());
        assert!(c.sub(&c4).unwrap().is_zero());
        assert_eq!(c.neg(), c);
        assert!(c.times(2).is_zero());
    }

    #[test]
    fn degree_zero() {
        let f = Cochain::from_residues(z(3), 0, 5, vec![2]).unwrap();
        assert_eq!(f.value(&[]), UnitScalar::new(2, 5));
        assert!(f.differential().is_zero());
    }
}
