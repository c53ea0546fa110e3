//! The built-in groups used by the sweeps and tests.

use super::group::FiniteGroup;

/// Symmetric group on `k` points; permutations compose as `(ab)(x) = a(b(x))`.
pub fn symmetric(k: usize) -> FiniteGroup {
    let id: Vec<usize> = (0..k).collect();
    let mut gens = Vec::new();
    if k >= 2 {
        let mut t = id.clone();
        t.swap(0, 1);
        gens.push(t);
        let cycle: Vec<usize> = (0..k).map(|i| (i + 1) % k).collect();
        gens.push(cycle);
    }
    FiniteGroup::from_closure(id, &gens, compose)
}

/// Dihedral group of order `2n`, acting on the vertices of an `n`-gon.
pub fn dihedral(n: usize) -> FiniteGroup {
    let id: Vec<usize> = (0..n).collect();
    let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    FiniteGroup::from_closure(id, &[rot, refl], compose)
}

/// Alternating group `A₄`.
pub fn alternating4() -> FiniteGroup {
    FiniteGroup::from_closure(vec![0, 1, 2, 3], &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]], compose)
}

/// The quaternion group `{±1, ±i, ±j, ±k}`.
pub fn quaternion() -> FiniteGroup {
    // (sign, unit) with unit 0..4 = 1, i, j, k
    fn qmul(a: &(bool, u8), b: &(bool, u8)) -> (bool, u8) {
        let (neg, unit) = match (a.1, b.1) {
            (0, u) | (u, 0) => (false, u),
            (x, y) if x == y => (true, 0),
            (1, 2) => (false, 3),
            (2, 3) => (false, 1),
            (3, 1) => (false, 2),
            (2, 1) => (true, 3),
            (3, 2) => (true, 1),
            (1, 3) => (true, 2),
            _ => unreachable!(),
        };
        (a.0 ^ b.0 ^ neg, unit)
    }
    FiniteGroup::from_closure((false, 0), &[(false, 1), (false, 2)], qmul)
}

pub fn klein_four() -> FiniteGroup {
    FiniteGroup::cyclic(2).direct_product(&FiniteGroup::cyclic(2))
}

fn compose(a: &Vec<usize>, b: &Vec<usize>) -> Vec<usize> {
    b.iter().map(|&x| a[x]).collect()
}

/// Looks up a group by name: `trivial`, `C<n>` (or `Z/<n>`), `V4`, `S3`,
/// `D<n>` (order `2n`), `Q8`, `A4`.
pub fn by_name(name: &str) -> Option<FiniteGroup> {
    let name = name.trim();
    let num = |s: &str| s.parse::<usize>().ok().filter(|&n| (1..=64).contains(&n));
    match name {
        "trivial" | "1" => Some(FiniteGroup::cyclic(1)),
        "V4" | "Klein4" => Some(klein_four()),
        "S3" => Some(symmetric(3)),
        "Q8" => Some(quaternion()),
        "A4" => Some(alternating4()),
        _ => {
            if let Some(n) = name.strip_prefix("Z/").or_else(|| name.strip_prefix('C')).and_then(num) {
                Some(FiniteGroup::cyclic(n))
            } else if let Some(n) = name.strip_prefix('D').and_then(num).filter(|&n| n >= 2) {
                Some(if n == 2 { klein_four() } else { dihedral(n) })
            } else {
                None
            }
        }
    }
}

/// The default catalog: trivial group, cyclic groups of order 2 to 8 and 12,
/// the Klein four group, `S₃`, `D₄` and `Q₈`, restricted to order at most
/// `max_order`. Sorted by order, then name.
pub fn catalog(max_order: usize) -> Vec<(String, FiniteGroup)> {
    let mut names: Vec<String> = vec!["trivial".into()];
    names.extend((2..=8).chain([12]).map(|n| format!("C{n}")));
    names.extend(["V4", "S3", "D4", "Q8"].map(String::from));
    let mut out: Vec<(String, FiniteGroup)> = names
        .into_iter()
        .map(|n| {
            let g = by_name(&n).expect("catalog name");
            (n, g)
        })
        .filter(|(_, g)| g.order() <= max_order)
        .collect();
    out.sort_by(|a, b| a.1.order().cmp(&b.1.order()).then_with(|| a.0.cmp(&b.0)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(symmetric(3).order(), 6);
        assert_eq!(dihedral(4).order(), 8);
        assert_eq!(quaternion().order(), 8);
        assert_eq!(alternating4().order(), 12);
        assert!(!symmetric(3).is_abelian());
    }

    #[test]
    fn quaternion_has_one_involution() {
        let q = quaternion();
        let involutions = q.elements().filter(|&a| q.element_order(a) == 2).count();
        assert_eq!(involutions, 1);
        let d4 = dihedral(4);
        assert_eq!(d4.elements().filter(|&a| d4.element_order(a) == 2).count(), 5);
    }

    #[test]
    fn catalog_contents() {
        let c = catalog(12);
        assert_eq!(c.len(), 13);
        assert!(c.iter().all(|(_, g)| g.order() <= 12));
        assert!(catalog(0).is_empty());
        assert_eq!(by_name("Z/5").unwrap().order(), 5);
        assert!(by_name("X7").is_none());
    }
}
