//! Generated families of modules for sweeps: finite-order integer matrices,
//! modules over cyclic groups and a smaller family over arbitrary groups.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use super::constructions::{permutation_module, reduce_mod, trivial_cyclic};
use super::module::GammaModule;
use crate::abelian::{smith_diagonal, IntMatrix, Presentation};
use crate::arith::gcd;
use crate::galois::{FiniteGroup, Subgroup};

type Small = Vec<Vec<i64>>;

fn small_mul(a: &Small, b: &Small) -> Small {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

fn small_identity(n: usize) -> Small {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

/// Order of `a` in `GL_r(ℤ)` if it is at most `cap`.
pub fn small_order(a: &Small, cap: usize) -> Option<usize> {
    let id = small_identity(a.len());
    let mut p = a.clone();
    for k in 1..=cap {
        if p == id {
            return Some(k);
        }
        p = small_mul(&p, a);
        if p.iter().flatten().any(|x| x.abs() > 1 << 20) {
            return None;
        }
    }
    None
}

fn to_matrix(a: &Small) -> IntMatrix {
    IntMatrix::from_rows(a)
}

fn poly_eval(a: &IntMatrix, coeffs: &[i64]) -> IntMatrix {
    // coeffs[i] multiplies aⁱ
    let n = a.rows();
    let mut out = IntMatrix::zeros(n, n);
    let mut p = IntMatrix::identity(n);
    for &c in coeffs {
        out = out.add(&p.scale(&BigInt::from(c))).expect("square");
        p = p.mul(a).expect("square");
    }
    out
}

/// Finite-order matrices in `GL_r(ℤ)` with entries in `{−1, 0, 1}`, one per
/// value of a conjugacy invariant (order, characteristic polynomial and the
/// Smith forms of `σ − 1`, `σ + 1`, `σ² + σ + 1`, `σ² − σ + 1`, `σ² + 1`).
/// The invariant separates the classes that occur for `r ≤ 3` in practice,
/// but it is not proven complete.
pub fn finite_order_matrices(r: usize) -> Vec<IntMatrix> {
    let cells = r * r;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let total = 3usize.pow(cells as u32);
    for code in 0..total {
        let mut c = code;
        let a: Small = (0..r)
            .map(|_| {
                (0..r)
                    .map(|_| {
                        let v = (c % 3) as i64 - 1;
                        c /= 3;
                        v
                    })
                    .collect()
            })
            .collect();
        let Some(order) = small_order(&a, 12) else { continue };
        let m = to_matrix(&a);
        let mut key: Vec<String> = vec![order.to_string()];
        key.push(format!("{:?}", charpoly(&a)));
        for coeffs in [&[-1, 1][..], &[1, 1], &[1, 1, 1], &[1, -1, 1], &[1, 0, 1]] {
            key.push(format!("{:?}", smith_diagonal(&poly_eval(&m, coeffs))));
        }
        if seen.insert(key) {
            out.push(m);
        }
    }
    out.sort_by_key(|m| (small_order(&to_small(m), 12), format!("{m:?}")));
    out
}

fn to_small(m: &IntMatrix) -> Small {
    m.to_rows().iter().map(|r| r.iter().map(|x| i64::try_from(x).expect("small")).collect()).collect()
}

/// Characteristic polynomial by Faddeev–LeVerrier (exact for small integer matrices).
fn charpoly(a: &Small) -> Vec<i64> {
    let n = a.len();
    let mut coeffs = vec![1i64];
    let mut m = small_identity(n);
    let mut am;
    for k in 1..=n {
        am = small_mul(a, &m);
        let tr: i64 = (0..n).map(|i| am[i][i]).sum();
        let c = -tr / k as i64;
        coeffs.push(c);
        m = am;
        for (i, row) in m.iter_mut().enumerate() {
            row[i] += c;
        }
    }
    coeffs
}

/// A named module for sweeps.
pub type Named = (String, GammaModule);

fn from_gen(g: &FiniteGroup, gen: usize, pres: Presentation, s: IntMatrix) -> Option<GammaModule> {
    GammaModule::from_generators(g.clone(), pres, &[(gen, s)]).ok()
}

/// Modules over `ℤ/n` (generator `1`): lattices of rank ≤ 3 with
/// finite-order actions, `ℤ/m` for `m ≤ 27` with every unit action, and
/// `(ℤ/m)ʳ` of order ≤ 27 with the finite-order matrix actions, and the
/// permutation modules `ℤ[C_n/C_(n/d)]` with their augmentation lattices,
/// integrally and mod `m ≤ 6`.
pub fn cyclic_family(n: usize) -> Vec<Named> {
    let g = FiniteGroup::cyclic(n);
    let gen = if n > 1 { 1 } else { 0 };
    let mut out = Vec::new();
    for r in 1..=3 {
        for s in finite_order_matrices(r) {
            if let Some(m) = from_gen(&g, gen, Presentation::free(r), s.clone()) {
                out.push((format!("lattice {s:?}"), m));
            }
        }
    }
    for m in 2..=27u64 {
        for u in 1..m {
            if gcd(u, m) != 1 {
                continue;
            }
            if let Ok(md) = GammaModule::cyclic_character(g.clone(), m, &power_table(&g, gen, u as i64, m as i64)) {
                out.push((format!("Z/{m} by {u}"), md));
            }
        }
    }
    for (r, m) in [(2, 2u64), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3)] {
        for s in finite_order_matrices(r) {
            let pres = Presentation::new(r, IntMatrix::scalar(r, &BigInt::from(m))).expect("square");
            if let Some(md) = from_gen(&g, gen, pres, s.clone()) {
                out.push((format!("(Z/{m})^{r} {s:?}"), md));
            }
        }
    }
    for d in (2..=n).filter(|d| n % d == 0) {
        let shift: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| i64::from((j + 1) % d == i)).collect()).collect();
        // x ↦ x·t on ℤ[t]/(1 + t + … + t^{d−1}), basis 1, t, …, t^{d−2}
        let aug: Vec<Vec<i64>> =
            (0..d - 1).map(|i| (0..d - 1).map(|j| if j == d - 2 { -1 } else { i64::from(j + 1 == i) }).collect()).collect();
        for (label, rows) in [("Z[C_n/C_(n/d)]", shift), ("augmentation of Z[C_n/C_(n/d)]", aug)] {
            let r = rows.len();
            for m in [0u64, 2, 3, 4, 5, 6] {
                let pres = if m == 0 {
                    Presentation::free(r)
                } else {
                    Presentation::new(r, IntMatrix::scalar(r, &BigInt::from(m))).expect("square")
                };
                if let Some(md) = from_gen(&g, gen, pres, IntMatrix::from_rows(&rows)) {
                    out.push((format!("{label} mod {m}, d = {d}"), md));
                }
            }
        }
    }
    out
}

fn power_table(g: &FiniteGroup, gen: usize, u: i64, m: i64) -> Vec<i64> {
    let mut chi = vec![0i64; g.order()];
    let mut x = g.identity();
    let mut v = 1i64;
    for _ in 0..g.order() {
        chi[x] = v;
        x = g.mul(x, gen);
        v = (v * u).rem_euclid(m.max(1));
    }
    chi
}

/// A small generating set: greedily add the least element not yet generated.
pub fn generating_set(g: &FiniteGroup) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut h = Subgroup::trivial(g);
    while h.order() < g.order() {
        let x = g.elements().find(|&x| !h.contains(x)).expect("proper subgroup");
        gens.push(x);
        h = Subgroup::generated(g, &gens);
    }
    gens
}

/// All homomorphisms `G → (ℤ/m)×`, as tables of residues.
pub fn characters_mod(g: &FiniteGroup, m: u64) -> Vec<Vec<u64>> {
    let units: Vec<u64> = (1..m.max(2)).filter(|&u| gcd(u, m) == 1).collect();
    let gens = generating_set(g);
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let mut chi: Vec<Option<u64>> = vec![None; g.order()];
        chi[g.identity()] = Some(1 % m.max(2));
        let mut stack = vec![g.identity()];
        while let Some(x) = stack.pop() {
            for (i, &s) in gens.iter().enumerate() {
                let y = g.mul(x, s);
                if chi[y].is_none() {
                    chi[y] = Some(chi[x].unwrap() * units[choice[i]] % m);
                    stack.push(y);
                }
            }
        }
        let chi: Vec<u64> = chi.into_iter().map(|c| c.expect("generated")).collect();
        let is_hom = g.elements().all(|a| g.elements().all(|b| chi[g.mul(a, b)] == chi[a] * chi[b] % m));
        if is_hom {
            out.push(chi);
        }
        // next choice
        let mut i = 0;
        loop {
            if i == gens.len() {
                return out;
            }
            choice[i] += 1;
            if choice[i] < units.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Modules over an arbitrary group: trivial `ℤ` and `ℤ/m`, `ℤ/m` twisted by
/// every nontrivial character into `(ℤ/m)×` (`m ≤ 9`), sign lattices, and
/// permutation modules reduced mod 2 or 3 when of order ≤ 27.
pub fn general_family(g: &FiniteGroup) -> Vec<Named> {
    let mut out: Vec<Named> = vec![("Z trivial".into(), trivial_cyclic(g, 0))];
    for m in [2u64, 3, 4] {
        out.push((format!("Z/{m} trivial"), trivial_cyclic(g, m)));
    }
    for m in [3u64, 4, 5, 7, 8, 9] {
        for chi in characters_mod(g, m) {
            if chi.iter().all(|&c| c == 1) {
                continue;
            }
            let table: Vec<i64> = chi.iter().map(|&c| c as i64).collect();
            if let Ok(md) = GammaModule::cyclic_character(g.clone(), m, &table) {
                out.push((format!("Z/{m} by {table:?}"), md));
            }
            if m == 3 {
                let sign: Vec<i64> = chi.iter().map(|&c| if c == 1 { 1 } else { -1 }).collect();
                if let Ok(md) = GammaModule::cyclic_character(g.clone(), 0, &sign) {
                    out.push((format!("Z by {sign:?}"), md));
                }
            }
        }
    }
    for h in g.all_subgroups() {
        let idx = h.index_in(g);
        if idx < 2 {
            continue;
        }
        let Ok(perm) = permutation_module(g, &h) else { continue };
        let label = format!("{:?}", h.elements());
        for m in [2u64, 3] {
            if (m as f64).powi(idx as i32) <= 27.0 {
                out.push((format!("Z/{m}[G/{label}]"), reduce_mod(&perm, m).expect("modulus")));
            }
        }
        if idx <= 3 {
            out.push((format!("Z[G/{label}]"), perm));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_catalog_sizes() {
        // GL₁(ℤ) has two finite-order classes: 1 and −1
        assert_eq!(finite_order_matrices(1).len(), 2);
        let two = finite_order_matrices(2);
        // orders 1, 2 (three classes), 3, 4, 6
        assert_eq!(two.len(), 7);
        assert!(two.iter().all(|m| small_order(&to_small(m), 12).is_some()));
    }

    #[test]
    fn charpoly_of_rotation() {
        assert_eq!(charpoly(&vec![vec![0, -1], vec![1, 0]]), vec![1, 0, 1]);
    }

    #[test]
    fn characters_of_c4() {
        let g = FiniteGroup::cyclic(4);
        assert_eq!(characters_mod(&g, 5).len(), 4);
        assert_eq!(characters_mod(&g, 3).len(), 2);
    }

    #[test]
    fn families_nonempty() {
        assert!(cyclic_family(2).len() > 50);
        let s3 = crate::galois::catalog::symmetric(3);
        assert!(general_family(&s3).len() >= 6);
    }
}
