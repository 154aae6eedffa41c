use super::construct::{closure, restrict};
use super::{dm4_algebra, find_isomorphism, Builtin, Elem, FiniteAlgebra, Homomorphism, Subset};
use super::{builtin, dm4};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SubsetKind {
    Plain,
    Filter,
    Ideal,
    PrimeFilter,
    PrimeIdeal,
}

/// A subset of an algebra's universe tagged with the property it was
/// produced under.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetOfAlgebra {
    pub set: Subset,
    pub kind: SubsetKind,
}

pub fn is_up_closed(a: &FiniteAlgebra, s: Subset) -> bool {
    s.iter().all(|x| a.elems().all(|y| !a.leq(x, y) || s.contains(y)))
}

pub fn is_down_closed(a: &FiniteAlgebra, s: Subset) -> bool {
    s.iter().all(|x| a.elems().all(|y| !a.leq(y, x) || s.contains(y)))
}

/// Upward closed and closed under meets. The empty set qualifies.
pub fn is_filter(a: &FiniteAlgebra, s: Subset) -> bool {
    is_up_closed(a, s) && s.iter().all(|x| s.iter().all(|y| s.contains(a.meet(x, y))))
}

pub fn is_ideal(a: &FiniteAlgebra, s: Subset) -> bool {
    is_down_closed(a, s) && s.iter().all(|x| s.iter().all(|y| s.contains(a.join(x, y))))
}

/// A filter containing a disjunct of each of its joins. Empty and full
/// sets qualify.
pub fn is_prime_filter(a: &FiniteAlgebra, s: Subset) -> bool {
    is_filter(a, s)
        && a.elems().all(|x| {
            a.elems()
                .all(|y| !s.contains(a.join(x, y)) || s.contains(x) || s.contains(y))
        })
}

pub fn is_prime_ideal(a: &FiniteAlgebra, s: Subset) -> bool {
    is_ideal(a, s)
        && a.elems().all(|x| {
            a.elems()
                .all(|y| !s.contains(a.meet(x, y)) || s.contains(x) || s.contains(y))
        })
}

fn up_set(a: &FiniteAlgebra, x: Elem) -> Subset {
    Subset::from_elems(a.elems().filter(|&y| a.leq(x, y)))
}

fn down_set(a: &FiniteAlgebra, x: Elem) -> Subset {
    Subset::from_elems(a.elems().filter(|&y| a.leq(y, x)))
}

/// Filters of a finite lattice in increasing bitset order: the empty set
/// and the principal up-sets.
pub fn enumerate_filters(a: &FiniteAlgebra, prime_only: bool) -> Vec<SubsetOfAlgebra> {
    collect(
        a,
        |x| up_set(a, x),
        |s| is_prime_filter(a, s),
        prime_only,
        SubsetKind::Filter,
        SubsetKind::PrimeFilter,
    )
}

/// Ideals of a finite lattice in increasing bitset order.
pub fn enumerate_ideals(a: &FiniteAlgebra, prime_only: bool) -> Vec<SubsetOfAlgebra> {
    collect(
        a,
        |x| down_set(a, x),
        |s| is_prime_ideal(a, s),
        prime_only,
        SubsetKind::Ideal,
        SubsetKind::PrimeIdeal,
    )
}

fn collect(
    a: &FiniteAlgebra,
    principal: impl Fn(Elem) -> Subset,
    prime: impl Fn(Subset) -> bool,
    prime_only: bool,
    plain: SubsetKind,
    primed: SubsetKind,
) -> Vec<SubsetOfAlgebra> {
    let mut sets: Vec<Subset> = std::iter::once(Subset::EMPTY)
        .chain(a.elems().map(principal))
        .collect();
    sets.sort();
    sets.dedup();
    sets.into_iter()
        .filter_map(|set| {
            let p = prime(set);
            if prime_only && !p {
                return None;
            }
            Some(SubsetOfAlgebra {
                set,
                kind: if p { primed } else { plain },
            })
        })
        .collect()
}

/// Extends a disjoint filter/ideal pair to a complementary prime pair.
///
/// Prime filters are searched in increasing bitset order and the first
/// `G ⊇ F` whose complement contains `I` is returned.
pub fn pair_extension(a: &FiniteAlgebra, f: Subset, i: Subset) -> Result<(Subset, Subset)> {
    if !is_filter(a, f) {
        return Err(Error::Precondition(format!("{f:?} is not a filter")));
    }
    if !is_ideal(a, i) {
        return Err(Error::Precondition(format!("{i:?} is not an ideal")));
    }
    if !f.intersection(i).is_empty() {
        return Err(Error::Precondition("filter and ideal intersect".into()));
    }
    let n = a.size();
    enumerate_filters(a, true)
        .into_iter()
        .map(|g| (g.set, g.set.complement(n)))
        .find(|&(g, j)| f.is_subset(g) && i.is_subset(j) && is_prime_ideal(a, j))
        .ok_or_else(|| Error::Internal("no prime pair extends the given pair".into()))
}

/// The map into DM4 determined by membership of `a` and `~a` in `t`.
pub fn h_t(a: &FiniteAlgebra, t: Subset) -> Result<Homomorphism> {
    if !is_prime_filter(a, t) {
        return Err(Error::Precondition(format!("{t:?} is not a prime filter")));
    }
    let map = a
        .elems()
        .map(|x| match (t.contains(x), t.contains(a.neg(x))) {
            (true, false) => dm4::T,
            (true, true) => dm4::B,
            (false, false) => dm4::N,
            (false, true) => dm4::F,
        })
        .collect();
    let lattice = a.with_constants(Default::default())?;
    Homomorphism::new(lattice, dm4_algebra(), map)
        .map_err(|_| Error::Internal("h_T failed to be a homomorphism".into()))
}

/// An injective homomorphism into a power of DM4 given by a family of
/// prime filters.
#[derive(Clone, Debug)]
pub struct SubdirectEmbedding {
    pub filters: Vec<Subset>,
    pub coordinates: Vec<Homomorphism>,
}

impl SubdirectEmbedding {
    /// Image of `x` as a tuple of DM4 elements.
    pub fn apply(&self, x: Elem) -> Vec<Elem> {
        self.coordinates.iter().map(|h| h.apply(x)).collect()
    }

    pub fn is_injective(&self, size: usize) -> bool {
        let mut images: Vec<Vec<Elem>> = (0..size).map(|x| self.apply(x)).collect();
        images.sort();
        images.dedup();
        images.len() == size
    }

    /// For each coordinate, the name of the builtin its image is isomorphic to.
    pub fn coordinate_types(&self) -> Vec<Option<Builtin>> {
        let candidates: Vec<(Builtin, FiniteAlgebra)> = [Builtin::B2, Builtin::K3, Builtin::DM4]
            .into_iter()
            .map(|b| (b, builtin(b, &[]).expect("builtin")))
            .collect();
        self.coordinates
            .iter()
            .map(|h| {
                let img = closure(&h.target, h.image());
                if img != h.image() {
                    return None;
                }
                let (sub, _) = restrict(&h.target, img).ok()?;
                candidates
                    .iter()
                    .find(|(_, c)| find_isomorphism(&sub, c).is_some())
                    .map(|(b, _)| *b)
            })
            .collect()
    }
}

const MINIMAL_SEARCH_LIMIT: usize = 16;

/// A smallest separating family of proper prime filters (the first in
/// lexicographic order of filter indices), with the induced coordinates.
pub fn subdirect_embedding(a: &FiniteAlgebra) -> Result<SubdirectEmbedding> {
    let n = a.size();
    let primes: Vec<Subset> = enumerate_filters(a, true)
        .into_iter()
        .map(|f| f.set)
        .filter(|&s| !s.is_empty() && s != Subset::full(n))
        .collect();
    let maps: Vec<Homomorphism> = primes.iter().map(|&t| h_t(a, t)).collect::<Result<_>>()?;
    let pairs: Vec<(Elem, Elem)> = (0..n).flat_map(|x| (0..x).map(move |y| (y, x))).collect();
    // which pairs each filter separates, as a bitmask over `pairs`
    let separates: Vec<Vec<bool>> = maps
        .iter()
        .map(|h| pairs.iter().map(|&(x, y)| h.apply(x) != h.apply(y)).collect())
        .collect();
    let covers = |family: &[usize]| (0..pairs.len()).all(|p| family.iter().any(|&i| separates[i][p]));

    let chosen: Option<Vec<usize>> = if primes.len() <= MINIMAL_SEARCH_LIMIT {
        (0..=primes.len()).find_map(|k| combinations(primes.len(), k).find(|c| covers(c)))
    } else {
        let mut family = Vec::new();
        for p in 0..pairs.len() {
            if !family.iter().any(|&i: &usize| separates[i][p]) {
                if let Some(i) = (0..primes.len()).find(|&i| separates[i][p]) {
                    family.push(i);
                }
            }
        }
        covers(&family).then_some(family)
    };
    let chosen = chosen.ok_or_else(|| {
        Error::Internal("prime filters do not separate points; input is not De Morgan".into())
    })?;
    Ok(SubdirectEmbedding {
        filters: chosen.iter().map(|&i| primes[i]).collect(),
        coordinates: chosen.iter().map(|&i| maps[i].clone()).collect(),
    })
}

fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur: Option<Vec<usize>> = (k <= n).then(|| (0..k).collect());
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                cur = None;
                break;
            }
            i -= 1;
            if next[i] < n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                cur = Some(next);
                break;
            }
        }
        Some(out)
    })
}

#[cfg(test)]
mod tests {
    use super::super::{b2, k3, product};
    use super::*;

    fn all_subsets(n: usize) -> impl Iterator<Item = Subset> {
        (0..1u64 << n).map(Subset)
    }

    #[test]
    fn dm4_filters_match_exhaustive_check() {
        let a = dm4_algebra();
        let prime: Vec<Subset> = enumerate_filters(&a, true).iter().map(|f| f.set).collect();
        let oracle: Vec<Subset> = all_subsets(4).filter(|&s| is_prime_filter(&a, s)).collect();
        assert_eq!(prime, oracle);
        use dm4::*;
        assert_eq!(
            prime,
            vec![
                Subset::EMPTY,
                Subset::from_elems([B, T]),
                Subset::from_elems([N, T]),
                Subset::full(4)
            ]
        );
        assert!(!is_prime_filter(&a, Subset::singleton(T)));
        let all: Vec<Subset> = enumerate_filters(&a, false).iter().map(|f| f.set).collect();
        let oracle: Vec<Subset> = all_subsets(4).filter(|&s| is_filter(&a, s)).collect();
        assert_eq!(all, oracle);
        assert_eq!(all.len(), 5);
    }

    #[test]
    fn b2_prime_filters() {
        let a = builtin(Builtin::B2, &[]).unwrap();
        let prime: Vec<Subset> = enumerate_filters(&a, true).iter().map(|f| f.set).collect();
        assert_eq!(prime, vec![Subset::EMPTY, Subset::singleton(b2::T), Subset::full(2)]);
    }

    #[test]
    fn ideals_are_dual() {
        let a = product(&[dm4_algebra(), builtin(Builtin::B2, &[]).unwrap()]).unwrap();
        let ideals: Vec<Subset> = enumerate_ideals(&a, false).iter().map(|f| f.set).collect();
        let oracle: Vec<Subset> = all_subsets(8).filter(|&s| is_ideal(&a, s)).collect();
        assert_eq!(ideals, oracle);
    }

    #[test]
    fn pair_extension_golden() {
        let a = dm4_algebra();
        use dm4::*;
        let (g, j) = pair_extension(&a, Subset::singleton(T), Subset::singleton(F)).unwrap();
        assert_eq!(g, Subset::from_elems([T, B]));
        assert_eq!(j, Subset::from_elems([N, F]));
        let (g, j) = pair_extension(&a, Subset::EMPTY, Subset::EMPTY).unwrap();
        assert_eq!((g, j), (Subset::EMPTY, Subset::full(4)));
        let b = builtin(Builtin::B2, &[]).unwrap();
        let (g, j) = pair_extension(&b, Subset::singleton(b2::T), Subset::singleton(b2::F)).unwrap();
        assert_eq!((g, j), (Subset::singleton(b2::T), Subset::singleton(b2::F)));
        assert!(pair_extension(&a, Subset::singleton(T), Subset::full(4)).is_err());
    }

    #[test]
    fn h_t_golden() {
        let a = dm4_algebra();
        use dm4::*;
        assert_eq!(h_t(&a, Subset::from_elems([T, B])).unwrap().map, vec![F, B, N, T]);
        assert_eq!(h_t(&a, Subset::from_elems([T, N])).unwrap().map, vec![F, N, B, T]);
        let k = builtin(Builtin::K3, &[]).unwrap();
        assert_eq!(h_t(&k, Subset::singleton(k3::T)).unwrap().map, vec![F, N, T]);
        assert!(h_t(&a, Subset::singleton(T)).is_err());
    }

    #[test]
    fn subdirect_small() {
        let a = dm4_algebra();
        let e = subdirect_embedding(&a).unwrap();
        assert_eq!(e.filters, vec![Subset::from_elems([dm4::B, dm4::T])]);
        let b2k3 = product(&[builtin(Builtin::B2, &[]).unwrap(), builtin(Builtin::K3, &[]).unwrap()]).unwrap();
        let e = subdirect_embedding(&b2k3).unwrap();
        assert!(e.filters.len() <= 2);
        assert!(e.is_injective(6));
        assert!(e.coordinate_types().iter().all(Option::is_some));
    }

    #[test]
    fn combinations_enumerate_in_order() {
        let c: Vec<Vec<usize>> = combinations(4, 2).collect();
        assert_eq!(c.len(), 6);
        assert_eq!(c[0], vec![0, 1]);
        assert_eq!(c[5], vec![2, 3]);
        assert_eq!(combinations(3, 0).count(), 1);
        assert_eq!(combinations(2, 3).count(), 0);
    }
}
