use super::{Elem, FiniteAlgebra};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Default largest universe for which the full congruence lattice is built.
pub const DEFAULT_CONGRUENCE_BOUND: usize = 10;

/// Largest size handled by partition brute force.
const BRUTE_FORCE_MAX: usize = 7;

/// An equivalence relation stored as the least representative of each
/// element's class.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Congruence {
    reps: Vec<Elem>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    /// Merges two classes; returns false if they were already one.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.0[hi] = lo;
        true
    }

    fn into_congruence(mut self) -> Congruence {
        let n = self.0.len();
        let mut least = vec![usize::MAX; n];
        for x in 0..n {
            let r = self.find(x);
            least[r] = least[r].min(x);
        }
        let reps = (0..n).map(|x| least[self.find(x)]).collect();
        Congruence { reps }
    }
}

impl Congruence {
    /// Builds from a representative vector, normalizing to least members.
    pub fn from_reps(reps: &[Elem]) -> Result<Congruence> {
        let n = reps.len();
        if reps.iter().any(|&r| r >= n) {
            return Err(Error::Precondition("representative out of range".into()));
        }
        let mut uf = UnionFind::new(n);
        for (x, &r) in reps.iter().enumerate() {
            uf.union(x, r);
        }
        Ok(uf.into_congruence())
    }

    pub fn identity(n: usize) -> Congruence {
        Congruence { reps: (0..n).collect() }
    }

    pub fn total(n: usize) -> Congruence {
        Congruence { reps: vec![0; n] }
    }

    /// Equivalence generated by the given pairs (not closed under operations).
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (Elem, Elem)>) -> Congruence {
        let mut uf = UnionFind::new(n);
        for (a, b) in pairs {
            uf.union(a, b);
        }
        uf.into_congruence()
    }

    /// Elements related iff they have the same image.
    pub fn kernel(map: &[Elem]) -> Congruence {
        let n = map.len();
        let pairs = (0..n).flat_map(|a| (0..a).filter(move |&b| map[a] == map[b]).map(move |b| (a, b)));
        Congruence::from_pairs(n, pairs)
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn rep(&self, a: Elem) -> Elem {
        self.reps[a]
    }

    pub fn reps(&self) -> &[Elem] {
        &self.reps
    }

    pub fn related(&self, a: Elem, b: Elem) -> bool {
        self.reps[a] == self.reps[b]
    }

    /// Least members of the classes, ascending.
    pub fn representatives(&self) -> Vec<Elem> {
        (0..self.len()).filter(|&x| self.reps[x] == x).collect()
    }

    pub fn num_classes(&self) -> usize {
        self.representatives().len()
    }

    pub fn classes(&self) -> Vec<Vec<Elem>> {
        self.representatives()
            .into_iter()
            .map(|r| (0..self.len()).filter(|&x| self.reps[x] == r).collect())
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.reps.iter().enumerate().all(|(x, &r)| x == r)
    }

    pub fn is_total(&self) -> bool {
        self.reps.iter().all(|&r| r == 0)
    }

    /// Whether every pair related here is related in `other`.
    pub fn refines(&self, other: &Congruence) -> bool {
        (0..self.len()).all(|x| other.related(x, self.reps[x]))
    }

    pub fn meet(&self, other: &Congruence) -> Congruence {
        let n = self.len();
        let pairs = (0..n).flat_map(|a| {
            (0..a)
                .filter(move |&b| self.related(a, b) && other.related(a, b))
                .map(move |b| (a, b))
        });
        Congruence::from_pairs(n, pairs)
    }

    /// Transitive closure of the union.
    pub fn join(&self, other: &Congruence) -> Congruence {
        let n = self.len();
        let mut uf = UnionFind::new(n);
        for x in 0..n {
            uf.union(x, self.reps[x]);
            uf.union(x, other.reps[x]);
        }
        uf.into_congruence()
    }

    /// Whether the partition is compatible with every operation of `a`.
    pub fn is_congruence_of(&self, a: &FiniteAlgebra) -> bool {
        if self.len() != a.size() {
            return false;
        }
        // comparing each element with its representative suffices
        for x in a.elems() {
            let r = self.reps[x];
            if x == r {
                continue;
            }
            if !self.related(a.neg(x), a.neg(r)) {
                return false;
            }
            for z in a.elems() {
                if !self.related(a.meet(x, z), a.meet(r, z)) || !self.related(a.join(x, z), a.join(r, z)) {
                    return false;
                }
            }
        }
        true
    }
}

/// Smallest congruence relating `x` and `y`.
pub fn principal_congruence(a: &FiniteAlgebra, x: Elem, y: Elem) -> Congruence {
    generated(a, &[(x, y)])
}

/// Smallest congruence containing the given pairs.
pub(crate) fn generated(a: &FiniteAlgebra, seeds: &[(Elem, Elem)]) -> Congruence {
    let mut uf = UnionFind::new(a.size());
    let mut work: Vec<(Elem, Elem)> = seeds.to_vec();
    while let Some((p, q)) = work.pop() {
        if !uf.union(p, q) {
            continue;
        }
        // translating a generating pair by every basic unary polynomial
        work.push((a.neg(p), a.neg(q)));
        for z in a.elems() {
            work.push((a.meet(p, z), a.meet(q, z)));
            work.push((a.join(p, z), a.join(q, z)));
        }
    }
    uf.into_congruence()
}

/// All congruences of `a` under the default size bound.
pub fn congruences(a: &FiniteAlgebra) -> Result<Vec<Congruence>> {
    congruences_within(a, DEFAULT_CONGRUENCE_BOUND)
}

/// All congruences of `a`, sorted, provided `|a| <= bound`.
pub fn congruences_within(a: &FiniteAlgebra, bound: usize) -> Result<Vec<Congruence>> {
    let n = a.size();
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "congruence computation",
            size: n,
            bound,
        });
    }
    let mut out = if n <= BRUTE_FORCE_MAX {
        by_partitions(a)
    } else {
        by_principal_joins(a)
    };
    out.sort();
    Ok(out)
}

fn by_partitions(a: &FiniteAlgebra) -> Vec<Congruence> {
    let n = a.size();
    let mut out = Vec::new();
    // restricted growth strings: block[i] <= 1 + max(block[..i])
    let mut block = vec![0usize; n];
    fn rec(a: &FiniteAlgebra, i: usize, max: usize, block: &mut Vec<usize>, out: &mut Vec<Congruence>) {
        let n = a.size();
        if i == n {
            let mut first = vec![usize::MAX; n];
            let reps = block
                .iter()
                .enumerate()
                .map(|(x, &b)| {
                    if first[b] == usize::MAX {
                        first[b] = x;
                    }
                    first[b]
                })
                .collect();
            let c = Congruence { reps };
            if c.is_congruence_of(a) {
                out.push(c);
            }
            return;
        }
        for b in 0..=max + 1 {
            block[i] = b;
            rec(a, i + 1, max.max(b), block, out);
        }
    }
    if n == 0 {
        return vec![Congruence::identity(0)];
    }
    rec(a, 1, 0, &mut block, &mut out);
    out
}

fn by_principal_joins(a: &FiniteAlgebra) -> Vec<Congruence> {
    let n = a.size();
    let mut principal: Vec<Congruence> = (0..n)
        .flat_map(|x| (0..x).map(move |y| (x, y)))
        .map(|(x, y)| principal_congruence(a, x, y))
        .collect();
    principal.sort();
    principal.dedup();
    let mut all: std::collections::BTreeSet<Congruence> = std::iter::once(Congruence::identity(n)).collect();
    let mut frontier: Vec<Congruence> = all.iter().cloned().collect();
    while let Some(c) = frontier.pop() {
        for p in &principal {
            let j = c.join(p);
            if all.insert(j.clone()) {
                frontier.push(j);
            }
        }
    }
    all.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::super::{builtin, construct::coords, dm4_algebra, product, Builtin};
    use super::*;

    /// Oracle: every partition of the universe, checked pairwise on all tuples.
    fn brute_force(a: &FiniteAlgebra) -> Vec<Congruence> {
        let n = a.size();
        let mut out = Vec::new();
        // assign each element a label < n, keep canonical labelings only
        let total = n.pow(n as u32);
        for mut code in 0..total {
            let mut lab = vec![0; n];
            for l in lab.iter_mut() {
                *l = code % n;
                code /= n;
            }
            let rel = |x: usize, y: usize| lab[x] == lab[y];
            let mut ok = true;
            'outer: for x in 0..n {
                for y in 0..n {
                    if !rel(x, y) {
                        continue;
                    }
                    if !rel(a.neg(x), a.neg(y)) {
                        ok = false;
                        break 'outer;
                    }
                    for u in 0..n {
                        for v in 0..n {
                            if rel(u, v) && (!rel(a.meet(x, u), a.meet(y, v)) || !rel(a.join(x, u), a.join(y, v))) {
                                ok = false;
                                break 'outer;
                            }
                        }
                    }
                }
            }
            if ok {
                let pairs = (0..n).flat_map(|x| (0..n).map(move |y| (x, y)));
                let c = Congruence::from_pairs(n, pairs.filter(|&(x, y)| lab[x] == lab[y]));
                out.push(c);
            }
        }
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn simple_builtins() {
        for a in [dm4_algebra(), builtin(Builtin::K3, &[]).unwrap(), builtin(Builtin::B2, &[]).unwrap()] {
            let cs = congruences(&a).unwrap();
            assert_eq!(cs, brute_force(&a));
            assert_eq!(cs.len(), 2);
            assert!(cs.iter().any(|c| c.is_identity()) && cs.iter().any(|c| c.is_total()));
        }
    }

    #[test]
    fn b2_squared_has_projection_kernels() {
        let b2 = builtin(Builtin::B2, &[]).unwrap();
        let p = product(&[b2.clone(), b2]).unwrap();
        let cs = congruences(&p).unwrap();
        assert_eq!(cs, brute_force(&p));
        for k in 0..2 {
            let proj: Vec<Elem> = p.elems().map(|x| coords(&[2, 2], x)[k]).collect();
            assert!(cs.contains(&Congruence::kernel(&proj)));
        }
        assert_eq!(cs.len(), 4);
    }

    #[test]
    fn principal_joins_match_partitions() {
        let b2 = builtin(Builtin::B2, &[]).unwrap();
        let k3 = builtin(Builtin::K3, &[]).unwrap();
        let algebras = [
            product(&[b2.clone(), k3.clone()]).unwrap(),
            product(&[k3.clone(), k3.clone()]).unwrap(),
            product(&[b2.clone(), b2.clone(), b2.clone()]).unwrap(),
            product(&[dm4_algebra(), b2.clone()]).unwrap(),
        ];
        for a in &algebras {
            assert_eq!(by_partitions(a), {
                let mut v = by_principal_joins(a);
                v.sort();
                v
            });
        }
    }

    #[test]
    fn lattice_closure() {
        let k3 = builtin(Builtin::K3, &[]).unwrap();
        let b2 = builtin(Builtin::B2, &[]).unwrap();
        for a in [product(&[b2.clone(), k3]).unwrap(), product(&[b2.clone(), b2.clone(), b2]).unwrap()] {
            let cs = congruences(&a).unwrap();
            for x in &cs {
                for y in &cs {
                    assert!(cs.contains(&x.meet(y)));
                    assert!(cs.contains(&x.join(y)));
                }
            }
        }
    }

    #[test]
    fn bound_is_enforced() {
        let dm = dm4_algebra();
        assert!(matches!(
            congruences_within(&dm, 3),
            Err(Error::BoundExceeded { size: 4, bound: 3, .. })
        ));
    }

    #[test]
    fn normalization() {
        let c = Congruence::from_reps(&[2, 1, 2, 1]).unwrap();
        assert_eq!(c.reps(), &[0, 1, 0, 1]);
        assert_eq!(c.classes(), vec![vec![0, 2], vec![1, 3]]);
    }
}
