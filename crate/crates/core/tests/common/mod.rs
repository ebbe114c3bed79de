//! Random groups, cocycles and valid pointed actions for the integration
//! and acceptance tests. Everything here is built from first principles
//! (brute-force homomorphism search, explicit gauge formulas) so it can act
//! as an oracle for the library.
#![allow(dead_code)]

use std::sync::Arc;

use anomaly_core::category::{PointedCategory, PointedGAction};
use anomaly_core::cochain::Cochain;
use anomaly_core::group::{FiniteGroup, GroupHom};
use anomaly_core::scalar::UnitScalar;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn cyclic(n: usize) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::cyclic(n).unwrap())
}

pub fn product(ns: &[usize]) -> (Arc<FiniteGroup>, Vec<Arc<FiniteGroup>>) {
    let factors: Vec<_> = ns.iter().map(|&n| cyclic(n)).collect();
    (Arc::new(FiniteGroup::direct_product(&factors).unwrap()), factors)
}

pub fn symmetric(n: usize) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::symmetric(n).unwrap())
}

/// Dihedral group of order 8: `r^i s^j` at index `i + 4j`.
pub fn dihedral8() -> Arc<FiniteGroup> {
    let mult = (0..8)
        .map(|x| {
            (0..8)
                .map(|y| {
                    let (i, j, k, l) = (x % 4, x / 4, y % 4, y / 4);
                    let r = if j == 0 { i + k } else { i + 4 - k };
                    r % 4 + 4 * ((j + l) % 2)
                })
                .collect()
        })
        .collect();
    Arc::new(FiniteGroup::from_table(mult, None).unwrap())
}

/// Quaternion group: `±1, ±i, ±j, ±k` at index `4·sign + unit`.
pub fn quaternion8() -> Arc<FiniteGroup> {
    // unit products (sign, unit) for 1, i, j, k
    const T: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let mult = (0..8)
        .map(|x| {
            (0..8)
                .map(|y| {
                    let (s, u) = T[x % 4][y % 4];
                    4 * ((x / 4 + y / 4 + s) % 2) + u
                })
                .collect()
        })
        .collect();
    Arc::new(FiniteGroup::from_table(mult, None).unwrap())
}

/// All groups of order at most 8 used by the property suites.
pub fn small_groups() -> Vec<Arc<FiniteGroup>> {
    let mut gs: Vec<_> = (1..=8).map(cyclic).collect();
    gs.push(product(&[2, 2]).0);
    gs.push(product(&[2, 4]).0);
    gs.push(product(&[2, 2, 2]).0);
    gs.push(symmetric(3));
    gs.push(dihedral8());
    gs.push(quaternion8());
    gs
}

pub fn pick_group(rng: &mut TestRng) -> Arc<FiniteGroup> {
    small_groups().choose(rng).unwrap().clone()
}

/// Every homomorphism `G -> Z_m`, by extending images of a greedy
/// generating set and checking the multiplication table.
pub fn homs_to_cyclic(g: &FiniteGroup, m: usize) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut gens = Vec::new();
    let mut span = vec![false; n];
    span[g.identity()] = true;
    let closure = |gens: &[usize]| {
        let mut s = vec![false; n];
        s[g.identity()] = true;
        let mut frontier = vec![g.identity()];
        while let Some(x) = frontier.pop() {
            for &y in gens {
                let z = g.mul(x, y);
                if !s[z] {
                    s[z] = true;
                    frontier.push(z);
                }
            }
        }
        s
    };
    for x in 0..n {
        if !span[x] {
            gens.push(x);
            span = closure(&gens);
        }
    }
    let mut out = Vec::new();
    let total = m.pow(gens.len() as u32);
    'images: for code in 0..total {
        let mut map = vec![usize::MAX; n];
        map[g.identity()] = 0;
        let mut c = code;
        let imgs: Vec<usize> = gens
            .iter()
            .map(|_| {
                let v = c % m;
                c /= m;
                v
            })
            .collect();
        let mut frontier = vec![g.identity()];
        while let Some(x) = frontier.pop() {
            for (gi, &y) in gens.iter().enumerate() {
                let z = g.mul(x, y);
                let v = (map[x] + imgs[gi]) % m;
                if map[z] == usize::MAX {
                    map[z] = v;
                    frontier.push(z);
                } else if map[z] != v {
                    continue 'images;
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if map[g.mul(x, y)] != (map[x] + map[y]) % m {
                    continue 'images;
                }
            }
        }
        out.push(map);
    }
    out
}

pub fn random_cochain(rng: &mut TestRng, g: &Arc<FiniteGroup>, degree: usize, modulus: u64) -> Cochain {
    Cochain::from_fn(g.clone(), degree, modulus, |_| UnitScalar::new(rng.gen_range(0..modulus) as i64, modulus)).unwrap()
}

fn at_modulus(c: &Cochain, n: u64) -> Cochain {
    Cochain::from_fn(c.group().clone(), c.degree(), n, |x| c.value(x)).unwrap()
}

/// Cocycles mod `n` of degree 1 and 2 built from homomorphisms to `Z_m`
/// with `m | n`: `f/m` and the pulled-back carry cocycle.
fn basic_cocycles(g: &Arc<FiniteGroup>, n: u64) -> (Vec<Cochain>, Vec<Cochain>) {
    let mut ones = Vec::new();
    let mut twos = Vec::new();
    for m in 2..=n as usize {
        if !(n as usize).is_multiple_of(m) {
            continue;
        }
        let target = cyclic(m);
        for map in homs_to_cyclic(g, m) {
            if map.iter().all(|&v| v == 0) {
                continue;
            }
            let f = GroupHom::new(g.clone(), target.clone(), map.clone()).unwrap();
            ones.push(at_modulus(
                &Cochain::from_fn(g.clone(), 1, m as u64, |x| UnitScalar::new(map[x[0]] as i64, m as u64)).unwrap(),
                n,
            ));
            twos.push(at_modulus(&Cochain::carry(m).unwrap().pullback(&f).unwrap(), n));
        }
    }
    (ones, twos)
}

/// Nonzero cocycle classes of degree `k` (1..=4) available from cup words
/// in the basic cocycles. May be empty.
pub fn class_generators(g: &Arc<FiniteGroup>, k: usize, n: u64) -> Vec<Cochain> {
    let (ones, twos) = basic_cocycles(g, n);
    let cup = |a: &Cochain, b: &Cochain| a.cup(b).unwrap();
    let mut out = Vec::new();
    match k {
        1 => out = ones,
        2 => {
            out.extend(twos.iter().cloned());
            for a in &ones {
                for b in &ones {
                    out.push(cup(a, b));
                }
            }
        }
        3 => {
            for a in &ones {
                for b in &twos {
                    out.push(cup(a, b));
                    out.push(cup(b, a));
                }
            }
        }
        4 => {
            for a in &twos {
                for b in &twos {
                    out.push(cup(a, b));
                }
            }
            for a in &ones {
                for b in &ones {
                    for c in &twos {
                        out.push(cup(&cup(a, b), c));
                    }
                }
            }
        }
        _ => {}
    }
    out.truncate(24);
    out
}

/// A random normalized `k`-cocycle mod `n`: a random combination of cup
/// words plus a random coboundary.
pub fn random_cocycle(rng: &mut TestRng, g: &Arc<FiniteGroup>, k: usize, n: u64) -> Cochain {
    let mut c = Cochain::zero(g.clone(), k, n);
    for gen in class_generators(g, k, n) {
        let t = rng.gen_range(0..n as i64);
        c = c.add(&gen.times(t)).unwrap();
    }
    if k >= 2 {
        let eta = random_cochain(rng, g, k - 1, n);
        c = c.add(&eta.differential()).unwrap();
    }
    at_modulus(&c, n)
}

/// A random valid pointed category with a `G`-action, all scalars mod `n`.
///
/// The objects `A` are abelian, so inversion is an automorphism; `G` acts
/// either trivially or by inversion through a homomorphism `G -> Z_2`.
/// With `α = α₀ + dβ`, `ψ^g = g*β − β − d t_g` and
/// `χ_{g,h} = −t_g(h·−) − t_h + t_{gh}` satisfy every axiom, provided
/// `α₀` is invariant; `α₀` is a random cocycle only for the trivial action.
pub fn random_action(
    rng: &mut TestRng,
    acting: &Arc<FiniteGroup>,
    objects: &Arc<FiniteGroup>,
    n: u64,
) -> (PointedCategory, PointedGAction) {
    assert!(objects.is_abelian());
    let (ng, na) = (acting.order(), objects.order());
    let parity: Vec<usize> = {
        let homs: Vec<_> = homs_to_cyclic(acting, 2).into_iter().filter(|h| h.contains(&1)).collect();
        if na > 2 && !homs.is_empty() && rng.gen_bool(0.7) {
            homs.choose(rng).unwrap().clone()
        } else {
            vec![0; ng]
        }
    };
    let nontrivial = parity.contains(&1);
    let object_act: Vec<Vec<usize>> =
        (0..ng).map(|g| (0..na).map(|a| if parity[g] == 1 { objects.inv(a) } else { a }).collect()).collect();
    let alpha0 = if nontrivial { Cochain::zero(objects.clone(), 3, n) } else { random_cocycle(rng, objects, 3, n) };
    let beta = random_cochain(rng, objects, 2, n);
    let alpha = alpha0.add(&beta.differential()).unwrap();
    let t: Vec<Cochain> = (0..ng)
        .map(|g| if g == acting.identity() { Cochain::zero(objects.clone(), 1, n) } else { random_cochain(rng, objects, 1, n) })
        .collect();
    let psi = (0..ng)
        .map(|g| {
            let p = &object_act[g];
            let moved = Cochain::from_fn(objects.clone(), 2, n, |x| beta.value(&[p[x[0]], p[x[1]]])).unwrap();
            moved.sub(&beta).unwrap().sub(&t[g].differential()).unwrap()
        })
        .collect();
    let mut chi = Vec::with_capacity(ng * ng);
    for g in 0..ng {
        for h in 0..ng {
            let ph = &object_act[h];
            let gh = acting.mul(g, h);
            chi.push(
                Cochain::from_fn(objects.clone(), 1, n, |x| {
                    t[gh].value(x) - t[g].value(&[ph[x[0]]]) - t[h].value(x)
                })
                .unwrap(),
            );
        }
    }
    let cat = PointedCategory::new(objects.clone(), alpha).unwrap();
    let act = PointedGAction::new(acting.clone(), objects.clone(), object_act, psi, chi).unwrap();
    (cat, act)
}

/// Small abelian object groups for random categories.
pub fn pick_objects(rng: &mut TestRng) -> Arc<FiniteGroup> {
    match rng.gen_range(0..5) {
        0 => cyclic(1),
        1 => cyclic(2),
        2 => cyclic(3),
        3 => cyclic(4),
        _ => product(&[2, 2]).0,
    }
}
