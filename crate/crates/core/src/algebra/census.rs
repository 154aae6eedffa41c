//! Enumeration of finite distributive lattices and De Morgan lattices up to
//! isomorphism.

use super::{Elem, FiniteAlgebra};
use crate::syntax::Constant;
use crate::{Error, Result};
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet};

pub const DEFAULT_CENSUS_BOUND: usize = 6;
pub const OPT_IN_CENSUS_BOUND: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CensusOptions {
    /// Largest size accepted without `allow_large`.
    pub bound: usize,
    /// Admit sizes up to [`OPT_IN_CENSUS_BOUND`].
    pub allow_large: bool,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            bound: DEFAULT_CENSUS_BOUND,
            allow_large: false,
        }
    }
}

impl CensusOptions {
    fn effective_bound(&self) -> usize {
        if self.allow_large {
            self.bound.max(OPT_IN_CENSUS_BOUND)
        } else {
            self.bound.min(OPT_IN_CENSUS_BOUND)
        }
    }
}

/// An order relation as row bitmasks: bit `j` of `rows[i]` iff `i <= j`.
type Order = Vec<u64>;

/// Naturally labeled bounded posets on `n` points: 0 is the bottom, `n-1`
/// the top, and `i <= j` implies `i <= j` as integers.
fn bounded_posets(n: usize) -> Vec<Order> {
    if n == 1 {
        return vec![vec![1]];
    }
    // downs[i] = strict down-set of i
    let mut out = Vec::new();
    let mut downs: Vec<u64> = vec![0; n];
    fn rec(n: usize, i: usize, downs: &mut Vec<u64>, out: &mut Vec<Order>) {
        if i == n - 1 {
            downs[i] = (1u64 << i) - 1;
            let mut rows = vec![0u64; n];
            for (j, &d) in downs.iter().enumerate() {
                rows[j] |= 1 << j;
                for k in 0..j {
                    if d >> k & 1 == 1 {
                        rows[k] |= 1 << j;
                    }
                }
            }
            out.push(rows);
            return;
        }
        // strict down-set of i: a down-closed subset of 0..i containing 0
        for mask in 0..(1u64 << i) {
            if mask & 1 == 0 {
                continue;
            }
            let closed = (0..i).all(|k| mask >> k & 1 == 0 || downs[k] & !mask == 0);
            if closed {
                downs[i] = mask;
                rec(n, i + 1, downs, out);
            }
        }
    }
    downs[0] = 0;
    rec(n, 1, &mut downs, &mut out);
    out
}

fn leq(o: &Order, a: usize, b: usize) -> bool {
    o[a] >> b & 1 == 1
}

/// Meet and join tables if the order is a lattice.
fn lattice_tables(o: &Order) -> Option<(Vec<Vec<Elem>>, Vec<Vec<Elem>>)> {
    let n = o.len();
    let mut meet = vec![vec![0; n]; n];
    let mut join = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            let ups = o[a] & o[b];
            let j = (0..n).find(|&c| ups >> c & 1 == 1 && o[c] & ups == ups)?;
            let downs: Vec<usize> = (0..n).filter(|&c| leq(o, c, a) && leq(o, c, b)).collect();
            let m = *downs.iter().find(|&&c| downs.iter().all(|&d| leq(o, d, c)))?;
            join[a][b] = j;
            meet[a][b] = m;
        }
    }
    Some((meet, join))
}

fn distributive(meet: &[Vec<Elem>], join: &[Vec<Elem>]) -> bool {
    let n = meet.len();
    (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| meet[x][join[y][z]] == join[meet[x][y]][meet[x][z]])))
}

/// All linear extensions of an order, as `perm[new] = old`.
fn linear_extensions(o: &Order) -> Vec<Vec<usize>> {
    let n = o.len();
    let mut out = Vec::new();
    let mut perm = Vec::with_capacity(n);
    fn rec(o: &Order, placed: u64, perm: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let n = o.len();
        if perm.len() == n {
            out.push(perm.clone());
            return;
        }
        for x in 0..n {
            if placed >> x & 1 == 1 {
                continue;
            }
            // all strict predecessors already placed
            let preds = (0..n).filter(|&y| y != x && leq(o, y, x)).fold(0u64, |m, y| m | 1 << y);
            if preds & !placed == 0 {
                perm.push(x);
                rec(o, placed | 1 << x, perm, out);
                perm.pop();
            }
        }
    }
    rec(o, 0, &mut perm, &mut out);
    out
}

fn relabel(o: &Order, perm: &[usize]) -> Order {
    let n = o.len();
    let mut inv = vec![0; n];
    for (new, &old) in perm.iter().enumerate() {
        inv[old] = new;
    }
    (0..n)
        .map(|new| {
            let old = perm[new];
            (0..n).filter(|&b| leq(o, old, b)).fold(0u64, |m, b| m | 1 << inv[b])
        })
        .collect()
}

/// Canonical representative of a lattice order together with its
/// automorphism group (as permutations of the canonical labels).
fn canonical(o: &Order) -> (Order, Vec<Vec<usize>>) {
    let exts = linear_extensions(o);
    let best = exts.iter().map(|p| relabel(o, p)).min().expect("nonempty");
    let canon_exts = linear_extensions(&best);
    let autos = canon_exts
        .into_iter()
        .filter(|p| relabel(&best, p) == best)
        .collect();
    (best, autos)
}

/// Distinct distributive lattice orders of size `n`, canonical and sorted.
fn distributive_orders(n: usize) -> Vec<(Order, Vec<Vec<usize>>)> {
    let found: BTreeSet<Order> = bounded_posets(n)
        .into_par_iter()
        .filter_map(|o| {
            let (m, j) = lattice_tables(&o)?;
            distributive(&m, &j).then(|| canonical(&o).0)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    found.into_iter().map(|o| canonical(&o)).collect()
}

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn check_size(n: usize, opts: &CensusOptions) -> Result<()> {
    let bound = opts.effective_bound();
    if n == 0 || n > bound {
        return Err(Error::BoundExceeded {
            what: "lattice census",
            size: n,
            bound,
        });
    }
    Ok(())
}

/// Distributive lattices of size `n` up to isomorphism, with the identity
/// map standing in for negation.
pub fn distributive_lattices(n: usize) -> Result<Vec<FiniteAlgebra>> {
    check_size(n, &CensusOptions { bound: OPT_IN_CENSUS_BOUND, allow_large: true })?;
    distributive_orders(n)
        .into_iter()
        .map(|(o, _)| {
            let (m, j) = lattice_tables(&o).expect("lattice");
            FiniteAlgebra::new(labels(n), m, j, (0..n).collect(), BTreeMap::new())
        })
        .collect()
}

/// Every distributive lattice of size `1..=max` (up to isomorphism) with
/// every unary map as negation and every assignment of `constants`.
/// Not deduplicated beyond the lattice reduct.
pub fn lattices_with_any_negation(max: usize, constants: &[Constant]) -> Result<Vec<FiniteAlgebra>> {
    let mut out = Vec::new();
    for n in 1..=max {
        for lat in distributive_lattices(n)? {
            for mut code in 0..n.pow(n as u32) {
                let mut neg = vec![0; n];
                for x in neg.iter_mut() {
                    *x = code % n;
                    code /= n;
                }
                let base = FiniteAlgebra::new(
                    labels(n),
                    lat.meet_table(),
                    lat.join_table(),
                    neg,
                    BTreeMap::new(),
                )?;
                for mut code in 0..n.pow(constants.len() as u32) {
                    let mut cs = BTreeMap::new();
                    for &c in constants {
                        cs.insert(c, code % n);
                        code /= n;
                    }
                    out.push(base.with_constants(cs)?);
                }
            }
        }
    }
    Ok(out)
}

/// De Morgan (or Kleene) lattices of size exactly `n` up to isomorphism,
/// under the default size bound.
pub fn enumerate_dm_lattices(n: usize, kleene_only: bool) -> Result<Vec<FiniteAlgebra>> {
    enumerate_dm_lattices_with(n, kleene_only, &CensusOptions::default())
}

pub fn enumerate_dm_lattices_with(n: usize, kleene_only: bool, opts: &CensusOptions) -> Result<Vec<FiniteAlgebra>> {
    check_size(n, opts)?;
    let mut out = Vec::new();
    for (o, autos) in distributive_orders(n) {
        let (m, j) = lattice_tables(&o).expect("lattice");
        let mut seen = BTreeSet::new();
        for neg in order_reversing_involutions(&o) {
            let canon = autos
                .iter()
                .map(|p| {
                    // conjugate: p maps new label -> old label
                    let mut inv = vec![0; n];
                    for (new, &old) in p.iter().enumerate() {
                        inv[old] = new;
                    }
                    (0..n).map(|x| inv[neg[p[x]]]).collect::<Vec<_>>()
                })
                .min()
                .expect("identity automorphism");
            if !seen.insert(canon.clone()) {
                continue;
            }
            let alg = FiniteAlgebra::new(labels(n), m.clone(), j.clone(), canon, BTreeMap::new())?;
            debug_assert!(alg.is_demorgan());
            if !kleene_only || alg.is_kleene() {
                out.push(alg);
            }
        }
    }
    Ok(out)
}

fn order_reversing_involutions(o: &Order) -> Vec<Vec<Elem>> {
    let n = o.len();
    let mut out = Vec::new();
    let mut neg = vec![usize::MAX; n];
    fn rec(o: &Order, x: usize, neg: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let n = o.len();
        if x == n {
            out.push(neg.clone());
            return;
        }
        if neg[x] != usize::MAX {
            return rec(o, x + 1, neg, out);
        }
        for y in x..n {
            if neg[y] != usize::MAX {
                continue;
            }
            neg[x] = y;
            neg[y] = x;
            let ok = (0..n).all(|z| {
                let nz = neg[z];
                nz == usize::MAX
                    || ((!leq(o, x, z) || leq(o, nz, y)) && (!leq(o, z, x) || leq(o, y, nz)))
                        && ((!leq(o, y, z) || leq(o, nz, x)) && (!leq(o, z, y) || leq(o, x, nz)))
            });
            if ok {
                rec(o, x + 1, neg, out);
            }
            neg[x] = usize::MAX;
            neg[y] = usize::MAX;
        }
    }
    rec(o, 0, &mut neg, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::super::{builtin, dm4_algebra, isomorphic, product, Builtin};
    use super::*;

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = vec![];
        for p in permutations(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }

    /// Oracle: every reflexive relation on n points that is a partial order,
    /// every involution, deduplicated by brute-force isomorphism.
    fn oracle_count(n: usize, kleene_only: bool) -> usize {
        let off: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).collect();
        let perms = permutations(n);
        let mut found: Vec<FiniteAlgebra> = Vec::new();
        for mask in 0u64..(1 << off.len()) {
            let mut r = vec![vec![false; n]; n];
            for a in 0..n {
                r[a][a] = true;
            }
            for (k, &(a, b)) in off.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    r[a][b] = true;
                }
            }
            let antisym = (0..n).all(|a| (0..n).all(|b| a == b || !(r[a][b] && r[b][a])));
            let trans = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(r[a][b] && r[b][c]) || r[a][c])));
            if !antisym || !trans {
                continue;
            }
            for neg in &perms {
                let lab = (0..n).map(|i| i.to_string()).collect();
                let Ok(alg) = FiniteAlgebra::from_order(lab, &r, neg.clone(), BTreeMap::new()) else {
                    break; // not a lattice: no negation helps
                };
                let ok = if kleene_only { alg.is_kleene() } else { alg.is_demorgan() };
                if ok && !found.iter().any(|f| perms.iter().any(|p| super::super::is_homomorphism(f, &alg, p))) {
                    found.push(alg);
                }
            }
        }
        found.len()
    }

    #[test]
    fn counts_match_oracle() {
        for n in 1..=5 {
            for kleene in [false, true] {
                let got = enumerate_dm_lattices(n, kleene).unwrap().len();
                assert_eq!(got, oracle_count(n, kleene), "n={n} kleene={kleene}");
            }
        }
    }

    #[test]
    fn small_sizes() {
        let two = enumerate_dm_lattices(2, false).unwrap();
        assert_eq!(two.len(), 1);
        assert!(isomorphic(&two[0], &builtin(Builtin::B2, &[]).unwrap()));
        let three = enumerate_dm_lattices(3, false).unwrap();
        assert_eq!(three.len(), 1);
        assert!(isomorphic(&three[0], &builtin(Builtin::K3, &[]).unwrap()));
        let four = enumerate_dm_lattices(4, false).unwrap();
        let b2 = builtin(Builtin::B2, &[]).unwrap();
        assert!(four.iter().any(|a| isomorphic(a, &dm4_algebra())));
        assert!(four.iter().any(|a| isomorphic(a, &product(&[b2.clone(), b2.clone()]).unwrap())));
        assert!(four.iter().any(|a| a.is_kleene() && (0..4).all(|x| (0..4).all(|y| a.leq(x, y) || a.leq(y, x)))));
        for (i, a) in four.iter().enumerate() {
            for b in &four[i + 1..] {
                assert!(!isomorphic(a, b));
            }
        }
    }

    #[test]
    fn deterministic_order() {
        assert_eq!(enumerate_dm_lattices(5, false).unwrap(), enumerate_dm_lattices(5, false).unwrap());
    }

    #[test]
    fn bounds() {
        assert!(enumerate_dm_lattices(7, false).is_err());
        let opts = CensusOptions { bound: 6, allow_large: true };
        assert!(enumerate_dm_lattices_with(7, false, &opts).is_ok());
        assert!(enumerate_dm_lattices_with(9, false, &opts).is_err());
        assert!(enumerate_dm_lattices(0, false).is_err());
    }

    #[test]
    fn distributive_lattice_counts() {
        // sequence A006982 starts 1, 1, 1, 2, 3, 5, 8, 15
        let counts: Vec<usize> = (1..=8).map(|n| distributive_lattices(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 5, 8, 15]);
    }

    #[test]
    fn any_negation_count() {
        assert_eq!(lattices_with_any_negation(4, &[]).unwrap().len(), 544);
    }
}
