//! Independent oracles: brute-force enumeration over small finite objects,
//! written without the engine's Smith normal form or lattice routines.
#![allow(dead_code)]

use std::collections::HashSet;

use depthzero::abelian::FinAbGroup;
use depthzero::galois::FiniteGroup;
use depthzero::gmodule::GammaModule;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut a = 0;
        while n % p == 0 {
            n /= p;
            a += 1;
        }
        if a > 0 {
            out.push((p, a));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A finite abelian group of exponent dividing `n`, recovered from the
/// sizes `count(d) = |A[d]|` for prime powers `d | n`.
pub fn group_from_torsion_counts(n: u64, mut count: impl FnMut(u64) -> u64) -> FinAbGroup {
    let mut orders: Vec<BigInt> = Vec::new();
    for (p, a) in factor(n) {
        // at_least[k] = number of cyclic factors of order ≥ p^k
        let mut at_least = vec![0u32; a as usize + 2];
        let mut prev = 1u64;
        for k in 1..=a {
            let c = count(p.pow(k));
            assert_eq!(c % prev, 0, "torsion counts must be nested");
            let mut ratio = c / prev;
            let mut r = 0;
            while ratio > 1 {
                assert_eq!(ratio % p, 0, "torsion ratio must be a power of p");
                ratio /= p;
                r += 1;
            }
            at_least[k as usize] = r;
            prev = c;
        }
        for k in 1..=a as usize {
            for _ in 0..at_least[k] - at_least[k + 1] {
                orders.push(BigInt::from(p.pow(k as u32)));
            }
        }
    }
    FinAbGroup::from_invariants(orders).unwrap()
}

/// Small-integer copy of a module with diagonal relations: moduli (`0` for
/// a free coordinate) and action matrices in column convention.
pub struct SmallModule {
    pub moduli: Vec<i64>,
    pub action: Vec<Vec<Vec<i64>>>,
}

impl SmallModule {
    /// `None` unless the relations are diagonal.
    pub fn of(m: &GammaModule) -> Option<Self> {
        let k = m.gens();
        let rel = &m.presentation().relations;
        let mut moduli = vec![0i64; k];
        for i in 0..rel.rows() {
            let row = rel.row(i);
            let nz: Vec<usize> = (0..k).filter(|&j| !row[j].is_zero()).collect();
            match nz.as_slice() {
                [] => {}
                [j] if moduli[*j] == 0 => moduli[*j] = row[*j].to_i64()?.abs(),
                _ => return None,
            }
        }
        let action = m
            .actions()
            .iter()
            .map(|a| a.to_rows().iter().map(|r| r.iter().map(|x| x.to_i64().unwrap()).collect()).collect())
            .collect();
        Some(SmallModule { moduli, action })
    }

    pub fn is_finite(&self) -> bool {
        self.moduli.iter().all(|&d| d > 0)
    }

    fn reduce(&self, mut v: Vec<i64>) -> Vec<i64> {
        for (x, &d) in v.iter_mut().zip(&self.moduli) {
            if d > 0 {
                *x = x.rem_euclid(d);
            }
        }
        v
    }

    fn act(&self, g: usize, v: &[i64]) -> Vec<i64> {
        let a = &self.action[g];
        self.reduce(a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect())
    }

    fn add(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        self.reduce(a.iter().zip(b).map(|(x, y)| x + y).collect())
    }

    fn sub(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        self.reduce(a.iter().zip(b).map(|(x, y)| x - y).collect())
    }

    /// Every element of a finite module.
    pub fn elements(&self) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        for &d in &self.moduli {
            out = out.into_iter().flat_map(|v| (0..d).map(move |x| [v.clone(), vec![x]].concat())).collect();
        }
        out
    }
}

fn generators(g: &FiniteGroup) -> Vec<usize> {
    let mut gens: Vec<usize> = Vec::new();
    let mut reached: HashSet<usize> = HashSet::from([g.identity()]);
    while reached.len() < g.order() {
        let x = g.elements().find(|x| !reached.contains(x)).unwrap();
        gens.push(x);
        let mut frontier: Vec<usize> = reached.iter().copied().collect();
        while let Some(y) = frontier.pop() {
            for &s in &gens {
                let z = g.mul(y, s);
                if reached.insert(z) {
                    frontier.push(z);
                }
            }
        }
    }
    gens
}

/// `H¹(G, M)` for a finite module with diagonal relations, by enumerating
/// every cocycle (determined by its values on generators) and every
/// coboundary.
pub fn h1_finite_brute(g: &FiniteGroup, m: &SmallModule) -> FinAbGroup {
    assert!(m.is_finite());
    let n = g.order();
    let gens = generators(g);
    let elems = m.elements();
    let zero = vec![0i64; m.moduli.len()];

    let mut cocycles: Vec<Vec<Vec<i64>>> = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    'outer: loop {
        let mut z: Vec<Option<Vec<i64>>> = vec![None; n];
        z[g.identity()] = Some(zero.clone());
        let mut stack = vec![g.identity()];
        while let Some(x) = stack.pop() {
            for (i, &s) in gens.iter().enumerate() {
                let y = g.mul(x, s);
                if z[y].is_none() {
                    let zx = z[x].clone().unwrap();
                    z[y] = Some(m.add(&zx, &m.act(x, &elems[choice[i]])));
                    stack.push(y);
                }
            }
        }
        let z: Vec<Vec<i64>> = z.into_iter().map(Option::unwrap).collect();
        let ok = g.elements().all(|a| g.elements().all(|b| z[g.mul(a, b)] == m.add(&z[a], &m.act(a, &z[b]))));
        if ok {
            cocycles.push(z);
        }
        for c in choice.iter_mut() {
            *c += 1;
            if *c < elems.len() {
                continue 'outer;
            }
            *c = 0;
        }
        break;
    }

    let boundaries: HashSet<Vec<Vec<i64>>> =
        elems.iter().map(|x| g.elements().map(|a| m.sub(&m.act(a, x), x)).collect()).collect();
    let scale = |z: &Vec<Vec<i64>>, d: i64| -> Vec<Vec<i64>> {
        z.iter().map(|v| m.reduce(v.iter().map(|x| x * d).collect())).collect()
    };
    group_from_torsion_counts(n as u64, |d| {
        let killed = cocycles.iter().filter(|z| boundaries.contains(&scale(z, d as i64))).count();
        (killed / boundaries.len()) as u64
    })
}

fn fixed_mod(g: &FiniteGroup, m: &SmallModule, d: i64) -> u64 {
    let r = m.moduli.len();
    let reduce = |v: Vec<i64>| v.into_iter().map(|x| x.rem_euclid(d)).collect::<Vec<_>>();
    let mut count = 0;
    let total = (d as u64).pow(r as u32);
    for idx in 0..total {
        let mut v = Vec::with_capacity(r);
        let mut t = idx;
        for _ in 0..r {
            v.push((t % d as u64) as i64);
            t /= d as u64;
        }
        let fixed = g.elements().all(|a| {
            let w: Vec<i64> = m.action[a].iter().map(|row| row.iter().zip(&v).map(|(x, y)| x * y).sum()).collect();
            reduce(w) == v
        });
        count += u64::from(fixed);
    }
    count
}

/// `H¹(G, L)` for a lattice via `H¹(G, L)[d] ≅ (L/dL)^G / (L^G/dL^G)`,
/// counting fixed vectors mod `d` by enumeration.
pub fn h1_lattice_brute(g: &FiniteGroup, m: &SmallModule) -> FinAbGroup {
    assert!(m.moduli.iter().all(|&d| d == 0));
    let n = g.order() as u64;
    // rank of L^G from a prime not dividing |G|
    let p = (2..).find(|&p| n % p != 0 && factor(p).len() == 1 && factor(p)[0].1 == 1).unwrap();
    let fp = fixed_mod(g, m, p as i64);
    let mut rank = 0u32;
    let mut t = fp;
    while t > 1 {
        t /= p;
        rank += 1;
    }
    group_from_torsion_counts(n, |d| fixed_mod(g, m, d as i64) / d.pow(rank))
}

/// Structure of the kernel of `qσ − 1` on `(ℤ/(q^k − 1))^r`, enumerated
/// one primary part at a time: the `F_q`-points of the unramified torus
/// inside `T(F_{q^k}) ≅ (F_{q^k}×)^r`.
pub fn lang_kernel(sigma: &[Vec<i64>], q: u64, k: u32) -> FinAbGroup {
    let r = sigma.len();
    let n = q.pow(k) - 1;
    let a: Vec<Vec<i64>> = (0..r)
        .map(|i| (0..r).map(|j| q as i64 * sigma[i][j] - i64::from(i == j)).collect())
        .collect();
    let mut orders: Vec<BigInt> = Vec::new();
    for (l, e) in factor(n) {
        let modulus = l.pow(e) as i64;
        let mut kernel: Vec<Vec<i64>> = Vec::new();
        let total = (modulus as u64).pow(r as u32);
        for idx in 0..total {
            let mut v = Vec::with_capacity(r);
            let mut t = idx;
            for _ in 0..r {
                v.push((t % modulus as u64) as i64);
                t /= modulus as u64;
            }
            if a.iter().all(|row| row.iter().zip(&v).map(|(x, y)| x * y).sum::<i64>().rem_euclid(modulus) == 0) {
                kernel.push(v);
            }
        }
        let part = group_from_torsion_counts(l.pow(e), |d| {
            kernel.iter().filter(|v| v.iter().all(|x| (x * d as i64).rem_euclid(modulus) == 0)).count() as u64
        });
        orders.extend(part.torsion().iter().cloned());
    }
    FinAbGroup::from_invariants(orders).unwrap()
}

/// Exact determinant by fraction-free elimination.
pub fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a = m.to_vec();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut with: Vec<Vec<usize>> = subsets(n - 1, k - 1);
    for s in &mut with {
        s.push(n - 1);
    }
    with.extend(subsets(n - 1, k));
    with
}

/// Nonzero invariant factors from determinantal divisors: `dₖ = gₖ/gₖ₋₁`
/// with `gₖ` the gcd of all `k × k` minors.
pub fn determinantal_invariants(a: &[Vec<i64>]) -> Vec<i128> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut prev = 1i128;
    for k in 1..=rows.min(cols) {
        let mut g = 0i128;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<i128>> = rs.iter().map(|&i| cs.iter().map(|&j| i128::from(a[i][j])).collect()).collect();
                g = gcd(g, det(&minor));
            }
        }
        if g == 0 {
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}
