use std::collections::{BTreeSet, HashMap, VecDeque};
use std::hash::Hash;

use crate::error::{Error, Result};

/// A finite group given by its full multiplication table.
///
/// Elements are the indices `0..order`. `mul(a, b)` is the product `ab`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    n: usize,
    mult: Vec<usize>,
    identity: usize,
    inv: Vec<usize>,
}

impl FiniteGroup {
    /// Builds a group from a square table, checking closure, the identity,
    /// inverses and associativity on every triple.
    pub fn new(table: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if identity >= n {
            return Err(Error::InvalidGroup(format!("identity {identity} out of range")));
        }
        let mut mult = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {i} has length {}, expected {n}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidGroup(format!("entry {bad} in row {i} out of range")));
            }
            mult.extend_from_slice(row);
        }
        for a in 0..n {
            if mult[identity * n + a] != a || mult[a * n + identity] != a {
                return Err(Error::InvalidGroup(format!("{identity} is not an identity for {a}")));
            }
        }
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| mult[a * n + b] == identity && mult[b * n + a] == identity) {
                Some(b) => inv[a] = b,
                None => return Err(Error::InvalidGroup(format!("element {a} has no inverse"))),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mult[a * n + b];
                for c in 0..n {
                    if mult[ab * n + c] != mult[a * n + mult[b * n + c]] {
                        return Err(Error::NonAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(FiniteGroup { n, mult, identity, inv })
    }

    /// Closure of `gens` under `mul`, listed in breadth-first order from the
    /// identity (which gets index 0).
    pub fn from_closure<T, F>(identity: T, gens: &[T], mul: F) -> Self
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
    {
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let x = mul(&elems[i], g);
                if !index.contains_key(&x) {
                    index.insert(x.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(x);
                }
            }
        }
        let n = elems.len();
        let table: Vec<Vec<usize>> =
            (0..n).map(|a| (0..n).map(|b| index[&mul(&elems[a], &elems[b])]).collect()).collect();
        FiniteGroup::new(table, 0).expect("closure of a group law is a group")
    }

    /// The cyclic group `ℤ/n` with element `k` standing for `k mod n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group of order 0");
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::new(table, 0).expect("cyclic table")
    }

    /// `self × other`, with `(a, b)` at index `a·|other| + b`.
    pub fn direct_product(&self, other: &FiniteGroup) -> Self {
        let m = other.n;
        let n = self.n * m;
        let table = (0..n)
            .map(|x| (0..n).map(|y| self.mul(x / m, y / m) * m + other.mul(x % m, y % m)).collect())
            .collect();
        FiniteGroup::new(table, self.identity * m + other.identity).expect("product table")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.n + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `g x g⁻¹`.
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, a: usize, k: u64) -> usize {
        let mut out = self.identity;
        let mut base = a;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = self.mul(out, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        out
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mult.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Smallest generator, if the group is cyclic.
    pub fn cyclic_generator(&self) -> Option<usize> {
        (0..self.n).find(|&a| self.element_order(a) == self.n)
    }

    /// Whether `f` (indexed by elements of `self`) is a homomorphism into `target`.
    pub fn is_hom_to(&self, target: &FiniteGroup, f: &[usize]) -> bool {
        f.len() == self.n
            && f.iter().all(|&x| x < target.n)
            && (0..self.n).all(|a| (0..self.n).all(|b| f[self.mul(a, b)] == target.mul(f[a], f[b])))
    }

    /// Every subgroup, sorted by order and then by element list.
    pub fn all_subgroups(&self) -> Vec<Subgroup> {
        let cyclics: BTreeSet<Vec<usize>> =
            (0..self.n).map(|a| Subgroup::generated(self, &[a]).elems).collect();
        let mut found: BTreeSet<Vec<usize>> = cyclics.clone();
        let mut frontier: Vec<Vec<usize>> = cyclics.iter().cloned().collect();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for h in &frontier {
                for c in &cyclics {
                    if c.iter().all(|x| h.binary_search(x).is_ok()) {
                        continue;
                    }
                    let gens: Vec<usize> = h.iter().chain(c).copied().collect();
                    let j = Subgroup::generated(self, &gens).elems;
                    if found.insert(j.clone()) {
                        next.push(j);
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<Subgroup> = found.into_iter().map(|elems| Subgroup { elems }).collect();
        out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elems.cmp(&b.elems)));
        out
    }

    pub fn normal_subgroups(&self) -> Vec<Subgroup> {
        self.all_subgroups().into_iter().filter(|h| h.is_normal_in(self)).collect()
    }
}

/// A subgroup, stored as its sorted element list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elems: Vec<usize>,
}

impl Subgroup {
    /// Checks closure, inverses and the identity.
    pub fn new(g: &FiniteGroup, elems: &[usize]) -> Result<Self> {
        let mut e: Vec<usize> = elems.to_vec();
        e.sort_unstable();
        e.dedup();
        if let Some(&x) = e.iter().find(|&&x| x >= g.order()) {
            return Err(Error::NotASubgroup(format!("element {x} out of range")));
        }
        if e.binary_search(&g.identity()).is_err() {
            return Err(Error::NotASubgroup("missing identity".into()));
        }
        for &a in &e {
            if e.binary_search(&g.inv(a)).is_err() {
                return Err(Error::NotASubgroup(format!("inverse of {a} missing")));
            }
            for &b in &e {
                if e.binary_search(&g.mul(a, b)).is_err() {
                    return Err(Error::NotASubgroup(format!("product {a}*{b} missing")));
                }
            }
        }
        Ok(Subgroup { elems: e })
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Subgroup { elems: vec![g.identity()] }
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Subgroup { elems: g.elements().collect() }
    }

    pub fn generated(g: &FiniteGroup, gens: &[usize]) -> Self {
        let mut seen = vec![false; g.order()];
        seen[g.identity()] = true;
        let mut stack = vec![g.identity()];
        while let Some(x) = stack.pop() {
            for &s in gens {
                let y = g.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        Subgroup { elems: (0..g.order()).filter(|&i| seen[i]).collect() }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elems
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elems.binary_search(&x).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elems.iter().all(|&x| other.contains(x))
    }

    pub fn is_normal_in(&self, g: &FiniteGroup) -> bool {
        g.elements().all(|a| self.elems.iter().all(|&h| self.contains(g.conj(a, h))))
    }

    /// Index `[G : H]`.
    pub fn index_in(&self, g: &FiniteGroup) -> usize {
        g.order() / self.order()
    }

    /// Checks that the stored elements form a subgroup of `g`.
    pub fn check(&self, g: &FiniteGroup) -> Result<()> {
        Subgroup::new(g, &self.elems).map(|_| ())
    }

    /// The subgroup as a standalone group; `embed[i]` is the element of `g`
    /// at local index `i`.
    pub fn as_group(&self, g: &FiniteGroup) -> (FiniteGroup, Vec<usize>) {
        let embed = self.elems.clone();
        let local = |x: usize| self.elems.binary_search(&x).expect("closed");
        let table = embed.iter().map(|&a| embed.iter().map(|&b| local(g.mul(a, b))).collect()).collect();
        let fg = FiniteGroup::new(table, local(g.identity())).expect("subgroup table");
        (fg, embed)
    }

    /// Image of a subgroup under an embedding or a projection.
    pub fn map_through(&self, embed: &[usize]) -> Subgroup {
        let mut elems: Vec<usize> = self.elems.iter().map(|&i| embed[i]).collect();
        elems.sort_unstable();
        elems.dedup();
        Subgroup { elems }
    }

    /// Preimage in the ambient group of a subgroup given in local indices.
    pub fn pull_back(g: &FiniteGroup, f: &[usize], target: &Subgroup) -> Subgroup {
        Subgroup { elems: g.elements().filter(|&x| target.contains(f[x])).collect() }
    }
}

/// Left cosets `gH` with the smallest element of each coset as representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftCosets {
    pub reps: Vec<usize>,
    /// `coset_of[x]` is the index into `reps` of the coset containing `x`.
    pub coset_of: Vec<usize>,
}

impl LeftCosets {
    pub fn new(g: &FiniteGroup, h: &Subgroup) -> Result<Self> {
        h.check(g)?;
        let mut coset_of = vec![usize::MAX; g.order()];
        let mut reps = Vec::new();
        for x in g.elements() {
            if coset_of[x] != usize::MAX {
                continue;
            }
            for &y in h.elements() {
                coset_of[g.mul(x, y)] = reps.len();
            }
            reps.push(x);
        }
        Ok(LeftCosets { reps, coset_of })
    }

    /// Representative of the coset containing `x`.
    pub fn rep_of(&self, x: usize) -> usize {
        self.reps[self.coset_of[x]]
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

/// One representative per left coset of `h`, the smallest index in each.
pub fn coset_reps(g: &FiniteGroup, h: &Subgroup) -> Result<Vec<usize>> {
    Ok(LeftCosets::new(g, h)?.reps)
}

/// The double cosets `H₁ g H₂`, each sorted, ordered by smallest element.
pub fn double_cosets(g: &FiniteGroup, h1: &Subgroup, h2: &Subgroup) -> Result<Vec<Vec<usize>>> {
    h1.check(g)?;
    h2.check(g)?;
    let mut seen = vec![false; g.order()];
    let mut blocks = Vec::new();
    for x in g.elements() {
        if seen[x] {
            continue;
        }
        let mut block: Vec<usize> = h1
            .elements()
            .iter()
            .flat_map(|&a| h2.elements().iter().map(move |&b| (a, b)))
            .map(|(a, b)| g.mul(g.mul(a, x), b))
            .collect();
        block.sort_unstable();
        block.dedup();
        for &y in &block {
            seen[y] = true;
        }
        blocks.push(block);
    }
    Ok(blocks)
}

/// `G/N` with the projection `G → G/N`. Cosets are numbered in the order of
/// their smallest elements.
pub fn quotient_group(g: &FiniteGroup, n: &Subgroup) -> Result<(FiniteGroup, Vec<usize>)> {
    let cosets = LeftCosets::new(g, n)?;
    if !n.is_normal_in(g) {
        return Err(Error::NotNormal);
    }
    let k = cosets.len();
    let table = (0..k)
        .map(|i| (0..k).map(|j| cosets.coset_of[g.mul(cosets.reps[i], cosets.reps[j])]).collect())
        .collect();
    let q = FiniteGroup::new(table, cosets.coset_of[g.identity()])?;
    Ok((q, cosets.coset_of))
}
