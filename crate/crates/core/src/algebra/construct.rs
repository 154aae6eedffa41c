use super::{Congruence, Elem, FiniteAlgebra, Subset, MAX_SIZE};
use crate::{Error, Result};
use std::collections::BTreeMap;

/// A structure-preserving map between two algebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    pub source: FiniteAlgebra,
    pub target: FiniteAlgebra,
    pub map: Vec<Elem>,
}

impl Homomorphism {
    /// Wraps `map`, verifying that it commutes with every shared operation.
    pub fn new(source: FiniteAlgebra, target: FiniteAlgebra, map: Vec<Elem>) -> Result<Homomorphism> {
        if !is_homomorphism(&source, &target, &map) {
            return Err(Error::Precondition("map is not a homomorphism".into()));
        }
        Ok(Homomorphism { source, target, map })
    }

    pub fn apply(&self, a: Elem) -> Elem {
        self.map[a]
    }

    pub fn is_injective(&self) -> bool {
        let img = self.image();
        img.len() == self.source.size()
    }

    pub fn is_surjective(&self) -> bool {
        self.image() == Subset::full(self.target.size())
    }

    pub fn image(&self) -> Subset {
        Subset::from_elems(self.map.iter().copied())
    }

    pub fn kernel(&self) -> Congruence {
        Congruence::kernel(&self.map)
    }
}

/// Whether `map` commutes with meet, join, negation and every constant
/// interpreted in both algebras.
pub fn is_homomorphism(src: &FiniteAlgebra, tgt: &FiniteAlgebra, map: &[Elem]) -> bool {
    if map.len() != src.size() || map.iter().any(|&b| b >= tgt.size()) {
        return false;
    }
    for a in src.elems() {
        if map[src.neg(a)] != tgt.neg(map[a]) {
            return false;
        }
        for b in src.elems() {
            if map[src.meet(a, b)] != tgt.meet(map[a], map[b])
                || map[src.join(a, b)] != tgt.join(map[a], map[b])
            {
                return false;
            }
        }
    }
    src.constants
        .iter()
        .all(|(c, &a)| tgt.constant(*c).is_none_or(|b| map[a] == b))
}

/// Mixed-radix coordinates of a product element, first factor most significant.
pub(crate) fn coords(sizes: &[usize], mut idx: Elem) -> Vec<Elem> {
    let mut out = vec![0; sizes.len()];
    for (i, &s) in sizes.iter().enumerate().rev() {
        out[i] = idx % s;
        idx /= s;
    }
    out
}

pub(crate) fn index(sizes: &[usize], cs: &[Elem]) -> Elem {
    cs.iter().zip(sizes).fold(0, |acc, (&c, &s)| acc * s + c)
}

/// Direct product with componentwise operations.
pub fn product(factors: &[FiniteAlgebra]) -> Result<FiniteAlgebra> {
    let Some(first) = factors.first() else {
        return Err(Error::Precondition("product of no algebras".into()));
    };
    let keys: Vec<_> = first.constants.keys().collect();
    if factors.iter().any(|f| f.constants.keys().collect::<Vec<_>>() != keys) {
        return Err(Error::SignatureMismatch(
            "factors interpret different constants".into(),
        ));
    }
    let sizes: Vec<usize> = factors.iter().map(|f| f.size()).collect();
    let n = sizes.iter().try_fold(1usize, |acc, &s| acc.checked_mul(s)).unwrap_or(usize::MAX);
    if n > MAX_SIZE {
        return Err(Error::BoundExceeded {
            what: "product size",
            size: n,
            bound: MAX_SIZE,
        });
    }
    let all: Vec<Vec<Elem>> = (0..n).map(|i| coords(&sizes, i)).collect();
    let combine = |a: Elem, b: Elem, op: &dyn Fn(&FiniteAlgebra, Elem, Elem) -> Elem| {
        let cs: Vec<Elem> = factors
            .iter()
            .enumerate()
            .map(|(k, f)| op(f, all[a][k], all[b][k]))
            .collect();
        index(&sizes, &cs)
    };
    let meet = (0..n)
        .map(|a| (0..n).map(|b| combine(a, b, &|f, x, y| f.meet(x, y))).collect())
        .collect();
    let join = (0..n)
        .map(|a| (0..n).map(|b| combine(a, b, &|f, x, y| f.join(x, y))).collect())
        .collect();
    let neg = (0..n)
        .map(|a| {
            let cs: Vec<Elem> = factors.iter().enumerate().map(|(k, f)| f.neg(all[a][k])).collect();
            index(&sizes, &cs)
        })
        .collect();
    let constants = first
        .constants
        .keys()
        .map(|&c| {
            let cs: Vec<Elem> = factors.iter().map(|f| f.constants[&c]).collect();
            (c, index(&sizes, &cs))
        })
        .collect();
    let labels = all
        .iter()
        .map(|cs| {
            let parts: Vec<&str> = cs.iter().enumerate().map(|(k, &c)| factors[k].label(c)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    FiniteAlgebra::new(labels, meet, join, neg, constants)
}

/// Closure of a generating set under all operations and constants.
pub fn closure(a: &FiniteAlgebra, gens: Subset) -> Subset {
    let mut s = gens;
    for &c in a.constants.values() {
        s.insert(c);
    }
    loop {
        let mut next = s;
        for x in s.iter() {
            next.insert(a.neg(x));
            for y in s.iter() {
                next.insert(a.meet(x, y));
                next.insert(a.join(x, y));
            }
        }
        if next == s {
            return s;
        }
        s = next;
    }
}

/// The subalgebra generated by `gens` together with its inclusion map.
pub fn subalgebra(a: &FiniteAlgebra, gens: Subset) -> Result<(FiniteAlgebra, Homomorphism)> {
    if !gens.is_subset(Subset::full(a.size())) {
        return Err(Error::Precondition("generator outside the universe".into()));
    }
    let univ = closure(a, gens);
    if univ.is_empty() {
        return Err(Error::Precondition("empty subalgebra".into()));
    }
    restrict(a, univ)
}

/// The algebra on a closed subset `univ`, elements in increasing order.
pub(crate) fn restrict(a: &FiniteAlgebra, univ: Subset) -> Result<(FiniteAlgebra, Homomorphism)> {
    let elems: Vec<Elem> = univ.iter().collect();
    let mut pos = vec![usize::MAX; a.size()];
    for (i, &e) in elems.iter().enumerate() {
        pos[e] = i;
    }
    let m = elems.len();
    let lookup = |e: Elem| -> Result<Elem> {
        match pos[e] {
            usize::MAX => Err(Error::Precondition("subset is not closed".into())),
            i => Ok(i),
        }
    };
    let mut meet = vec![vec![0; m]; m];
    let mut join = vec![vec![0; m]; m];
    for i in 0..m {
        for j in 0..m {
            meet[i][j] = lookup(a.meet(elems[i], elems[j]))?;
            join[i][j] = lookup(a.join(elems[i], elems[j]))?;
        }
    }
    let neg = elems.iter().map(|&e| lookup(a.neg(e))).collect::<Result<_>>()?;
    let constants = a
        .constants
        .iter()
        .map(|(&c, &e)| Ok((c, lookup(e)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    let labels = elems.iter().map(|&e| a.label(e).to_string()).collect();
    let sub = FiniteAlgebra::new(labels, meet, join, neg, constants)?;
    let emb = Homomorphism {
        source: sub.clone(),
        target: a.clone(),
        map: elems,
    };
    Ok((sub, emb))
}

/// Quotient by a congruence together with the projection.
///
/// Classes are ordered by their least member. A singleton class keeps its
/// label; a larger class is labeled by its members in brackets.
pub fn quotient(a: &FiniteAlgebra, theta: &Congruence) -> Result<(FiniteAlgebra, Homomorphism)> {
    if theta.len() != a.size() {
        return Err(Error::SignatureMismatch("congruence on a different universe".into()));
    }
    if !theta.is_congruence_of(a) {
        return Err(Error::Precondition("partition is not a congruence".into()));
    }
    let reps = theta.representatives();
    let mut class_of = vec![0; a.size()];
    for x in a.elems() {
        class_of[x] = reps.binary_search(&theta.rep(x)).expect("rep listed");
    }
    let m = reps.len();
    let meet = (0..m)
        .map(|i| (0..m).map(|j| class_of[a.meet(reps[i], reps[j])]).collect())
        .collect();
    let join = (0..m)
        .map(|i| (0..m).map(|j| class_of[a.join(reps[i], reps[j])]).collect())
        .collect();
    let neg = reps.iter().map(|&r| class_of[a.neg(r)]).collect();
    let constants = a.constants.iter().map(|(&c, &e)| (c, class_of[e])).collect();
    let labels = theta
        .classes()
        .iter()
        .map(|cls| {
            if cls.len() == 1 {
                a.label(cls[0]).to_string()
            } else {
                let names: Vec<&str> = cls.iter().map(|&x| a.label(x)).collect();
                format!("[{}]", names.join(","))
            }
        })
        .collect();
    let q = FiniteAlgebra::new(labels, meet, join, neg, constants)?;
    let proj = Homomorphism {
        source: a.clone(),
        target: q.clone(),
        map: class_of,
    };
    Ok((q, proj))
}

/// An isomorphism `a -> b` if one exists, found by backtracking.
pub fn find_isomorphism(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Option<Vec<Elem>> {
    let n = a.size();
    if n != b.size() || a.constants.keys().ne(b.constants.keys()) {
        return None;
    }
    // cheap invariant: number of elements strictly below
    let below = |x: &FiniteAlgebra, e: Elem| x.elems().filter(|&y| x.leq(y, e)).count();
    let inv_a: Vec<(usize, bool)> = a.elems().map(|e| (below(a, e), a.neg(e) == e)).collect();
    let inv_b: Vec<(usize, bool)> = b.elems().map(|e| (below(b, e), b.neg(e) == e)).collect();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for (c, &x) in &a.constants {
        let y = b.constants[c];
        if map[x] != usize::MAX && map[x] != y || (map[x] == usize::MAX && used[y]) {
            return None;
        }
        map[x] = y;
        used[y] = true;
    }
    fn consistent(a: &FiniteAlgebra, b: &FiniteAlgebra, map: &[Elem], x: Elem) -> bool {
        let fx = map[x];
        let chk = |u: Elem, v: Elem| map[u] == usize::MAX || map[u] == v;
        if !chk(a.neg(x), b.neg(fx)) {
            return false;
        }
        for y in a.elems() {
            let fy = map[y];
            if fy == usize::MAX {
                continue;
            }
            if !chk(a.meet(x, y), b.meet(fx, fy)) || !chk(a.join(x, y), b.join(fx, fy)) {
                return false;
            }
        }
        true
    }
    fn go(
        a: &FiniteAlgebra,
        b: &FiniteAlgebra,
        inv: (&[(usize, bool)], &[(usize, bool)]),
        x: Elem,
        map: &mut Vec<Elem>,
        used: &mut Vec<bool>,
    ) -> bool {
        if x == a.size() {
            return is_homomorphism(a, b, map);
        }
        if map[x] != usize::MAX {
            return consistent(a, b, map, x) && go(a, b, inv, x + 1, map, used);
        }
        for y in b.elems() {
            if used[y] || inv.0[x] != inv.1[y] {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if consistent(a, b, map, x) && go(a, b, inv, x + 1, map, used) {
                return true;
            }
            map[x] = usize::MAX;
            used[y] = false;
        }
        false
    }
    go(a, b, (&inv_a, &inv_b), 0, &mut map, &mut used).then_some(map)
}

pub fn isomorphic(a: &FiniteAlgebra, b: &FiniteAlgebra) -> bool {
    find_isomorphism(a, b).is_some()
}

#[cfg(test)]
mod tests {
    use super::super::{builtin, dm4, dm4_algebra, Builtin};
    use super::*;

    fn b2() -> FiniteAlgebra {
        builtin(Builtin::B2, &[]).unwrap()
    }

    /// Isomorphism oracle trying every permutation.
    fn iso_by_permutations(a: &FiniteAlgebra, b: &FiniteAlgebra) -> bool {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = vec![];
            for p in perms(n - 1) {
                for i in 0..n {
                    let mut q = p.clone();
                    q.insert(i, n - 1);
                    out.push(q);
                }
            }
            out
        }
        a.size() == b.size() && perms(a.size()).iter().any(|p| is_homomorphism(a, b, p))
    }

    #[test]
    fn b2_squared_is_not_dm4() {
        let p = product(&[b2(), b2()]).unwrap();
        assert_eq!(p.size(), 4);
        assert!(p.is_demorgan() && p.is_kleene());
        assert!(p.elems().all(|x| p.neg(x) != x));
        assert!(!isomorphic(&p, &dm4_algebra()));
        assert!(!iso_by_permutations(&p, &dm4_algebra()));
        assert!(isomorphic(&p, &p.relabeled(vec!["a".into(), "b".into(), "c".into(), "d".into()])));
    }

    #[test]
    fn isomorphism_agrees_with_permutation_oracle() {
        let k = builtin(Builtin::K3, &[]).unwrap();
        let algebras = [b2(), k.clone(), dm4_algebra(), product(&[b2(), b2()]).unwrap()];
        for x in &algebras {
            for y in &algebras {
                assert_eq!(isomorphic(x, y), iso_by_permutations(x, y));
            }
        }
        // DM4 with n and b swapped is still DM4
        let swapped = FiniteAlgebra::new(
            dm4_algebra().labels().to_vec(),
            dm4_algebra().meet_table(),
            dm4_algebra().join_table(),
            dm4_algebra().neg_table().to_vec(),
            BTreeMap::new(),
        )
        .unwrap();
        assert_eq!(find_isomorphism(&swapped, &dm4_algebra()).map(|m| m.len()), Some(4));
    }

    #[test]
    fn subalgebra_of_a_fixpoint() {
        let (sub, emb) = subalgebra(&dm4_algebra(), Subset::singleton(dm4::N)).unwrap();
        assert_eq!(sub.size(), 1);
        assert_eq!(emb.map, vec![dm4::N]);
        let (sub, _) = subalgebra(&dm4_algebra(), Subset::singleton(dm4::T)).unwrap();
        assert_eq!(sub.labels(), ["f", "t"]);
    }

    #[test]
    fn quotient_by_identity_and_kernels() {
        let a = dm4_algebra();
        let (q, proj) = quotient(&a, &Congruence::identity(4)).unwrap();
        assert!(isomorphic(&q, &a));
        assert!(proj.is_surjective());

        let k = builtin(Builtin::K3, &[]).unwrap();
        let p = product(&[b2(), k.clone()]).unwrap();
        let first: Vec<Elem> = p.elems().map(|x| coords(&[2, 3], x)[0]).collect();
        let theta = Congruence::kernel(&first);
        let (q, proj) = quotient(&p, &theta).unwrap();
        assert_eq!(q.size(), 2);
        assert!(isomorphic(&q, &b2()));
        assert_eq!(proj.kernel(), theta);
        assert!(is_homomorphism(&p, &q, &proj.map));
    }

    #[test]
    fn product_constants() {
        let t = builtin(Builtin::B2, &[crate::syntax::Constant::Top]).unwrap();
        let p = product(&[t.clone(), t.clone()]).unwrap();
        assert_eq!(p.constant(crate::syntax::Constant::Top), Some(p.top()));
        assert!(product(&[t, b2()]).is_err());
    }
}
