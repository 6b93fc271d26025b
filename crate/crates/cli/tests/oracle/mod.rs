//! Brute-force reference computations: subsets of the carrier, subsets of the
//! point set, nothing shared with the library beyond the operation tables.

use std::collections::BTreeSet;

use reslat_core::ResiduatedLattice;

pub type Set = u64;

pub fn has(s: Set, i: usize) -> bool {
    s >> i & 1 == 1
}

pub fn members(s: Set) -> impl Iterator<Item = usize> {
    (0..64).filter(move |&i| has(s, i))
}

pub fn subset(a: Set, b: Set) -> bool {
    a & !b == 0
}

pub struct Oracle<'a> {
    pub l: &'a ResiduatedLattice,
    pub n: usize,
    pub whole: Set,
    pub unit: Set,
    /// Every filter, by scanning all subsets.
    pub filters: Vec<Set>,
    pub primes: Vec<Set>,
    pub minimal: Vec<Set>,
    pub maximal: Vec<Set>,
}

impl<'a> Oracle<'a> {
    pub fn new(l: &'a ResiduatedLattice) -> Self {
        let n = l.size();
        let top = l.top();
        let whole = (1u64 << n) - 1;
        let is_filter = |s: Set| {
            has(s, top)
                && members(s).all(|x| (0..n).all(|y| !l.leq(x, y) || has(s, y)))
                && members(s).all(|x| members(s).all(|y| has(s, l.odot(x, y))))
        };
        let filters: Vec<Set> = (0..=whole).filter(|&s| is_filter(s)).collect();
        let primes: Vec<Set> = filters
            .iter()
            .copied()
            .filter(|&p| {
                p != whole
                    && (0..n).all(|x| (0..n).all(|y| !has(p, l.join(x, y)) || has(p, x) || has(p, y)))
            })
            .collect();
        let minimal = primes
            .iter()
            .copied()
            .filter(|&p| primes.iter().all(|&q| q == p || !subset(q, p)))
            .collect();
        let proper: Vec<Set> = filters.iter().copied().filter(|&f| f != whole).collect();
        let maximal = proper
            .iter()
            .copied()
            .filter(|&m| proper.iter().all(|&g| g == m || !subset(m, g)))
            .collect();
        Self {
            l,
            n,
            whole,
            unit: 1 << top,
            filters,
            primes,
            minimal,
            maximal,
        }
    }

    /// Least filter containing `s`.
    pub fn generated(&self, s: Set) -> Set {
        self.filters
            .iter()
            .copied()
            .filter(|&f| subset(s, f))
            .fold(self.whole, |acc, f| acc & f)
    }

    pub fn join(&self, f: Set, g: Set) -> Set {
        self.generated(f | g)
    }

    /// `a⊥ = {x | x v a = 1}`.
    pub fn coannulet(&self, a: usize) -> Set {
        (0..self.n)
            .filter(|&x| self.l.join(x, a) == self.l.top())
            .fold(0, |acc, x| acc | 1 << x)
    }

    /// Intersection of a family of filters, `A` when empty.
    pub fn kernel<I: IntoIterator<Item = Set>>(&self, ps: I) -> Set {
        ps.into_iter().fold(self.whole, |acc, p| acc & p)
    }

    pub fn hull(&self, f: Set) -> Vec<Set> {
        self.primes.iter().copied().filter(|&p| subset(f, p)).collect()
    }

    /// Primes lying below some member of `ps`.
    pub fn generalization(&self, ps: &[Set]) -> Vec<Set> {
        self.primes
            .iter()
            .copied()
            .filter(|&q| ps.iter().any(|&p| subset(q, p)))
            .collect()
    }

    pub fn sigma_spectral(&self, f: Set) -> Set {
        self.kernel(self.generalization(&self.hull(f)))
    }

    pub fn sigma_coannulets(&self, f: Set) -> Set {
        (0..self.n)
            .filter(|&a| self.join(f, self.coannulet(a)) == self.whole)
            .fold(0, |acc, a| acc | 1 << a)
    }

    pub fn pure(&self) -> Vec<Set> {
        self.filters
            .iter()
            .copied()
            .filter(|&f| self.sigma_spectral(f) == f)
            .collect()
    }

    /// Largest pure filter inside `f`.
    pub fn rho(&self, pure: &[Set], f: Set) -> Set {
        let inside: Vec<Set> = pure.iter().copied().filter(|&g| subset(g, f)).collect();
        *inside
            .iter()
            .find(|&&g| inside.iter().all(|&h| subset(h, g)))
            .expect("the pure filters inside a filter have a largest element")
    }

    pub fn f_sub(&self, pure: &[Set], a: usize) -> Set {
        self.kernel(
            self.maximal
                .iter()
                .copied()
                .filter(|&m| has(m, a))
                .map(|m| self.rho(pure, m)),
        )
    }

    pub fn purely_maximal(&self, pure: &[Set]) -> Vec<Set> {
        let proper: Vec<Set> = pure.iter().copied().filter(|&f| f != self.whole).collect();
        proper
            .iter()
            .copied()
            .filter(|&p| proper.iter().all(|&g| g == p || !subset(p, g)))
            .collect()
    }

    pub fn purely_prime(&self, pure: &[Set]) -> Vec<Set> {
        pure.iter()
            .copied()
            .filter(|&p| p != self.whole)
            .filter(|&p| {
                pure.iter().all(|&f1| {
                    pure.iter()
                        .all(|&f2| !subset(f1 & f2, p) || subset(f1, p) || subset(f2, p))
                })
            })
            .collect()
    }

    /// Complemented elements.
    pub fn boolean(&self) -> Vec<usize> {
        let l = self.l;
        (0..self.n)
            .filter(|&e| (0..self.n).any(|f| l.join(e, f) == l.top() && l.meet(e, f) == l.bottom()))
            .collect()
    }

    pub fn is_mp(&self) -> bool {
        self.primes
            .iter()
            .all(|&p| self.minimal.iter().filter(|&&m| subset(m, p)).count() == 1)
    }
}

/// A topology on `k` points given by all its open sets.
pub struct Space {
    pub k: usize,
    pub opens: BTreeSet<Set>,
}

impl Space {
    /// Close the subbasis under finite intersections, then arbitrary unions.
    pub fn generated(k: usize, subbasis: &[Set]) -> Self {
        let all = (1u64 << k) - 1;
        let mut basis: BTreeSet<Set> = subbasis.iter().map(|&u| u & all).collect();
        basis.insert(all);
        loop {
            let next: BTreeSet<Set> = basis
                .iter()
                .flat_map(|&u| basis.iter().map(move |&v| u & v))
                .chain(basis.iter().copied())
                .collect();
            if next.len() == basis.len() {
                break;
            }
            basis = next;
        }
        let mut opens: BTreeSet<Set> = BTreeSet::from([0]);
        loop {
            let next: BTreeSet<Set> = opens
                .iter()
                .flat_map(|&u| basis.iter().map(move |&v| u | v))
                .chain(opens.iter().copied())
                .collect();
            if next.len() == opens.len() {
                break;
            }
            opens = next;
        }
        Self { k, opens }
    }

    pub fn all(&self) -> Set {
        (1u64 << self.k) - 1
    }

    pub fn closed(&self) -> Vec<Set> {
        self.opens.iter().map(|&u| self.all() & !u).collect()
    }

    pub fn is_closed(&self, s: Set) -> bool {
        self.opens.contains(&(self.all() & !s))
    }

    pub fn closure(&self, s: Set) -> Set {
        self.closed()
            .into_iter()
            .filter(|&c| subset(s, c))
            .fold(self.all(), |acc, c| acc & c)
    }

    pub fn clopens(&self) -> BTreeSet<Set> {
        self.opens.iter().copied().filter(|&u| self.is_closed(u)).collect()
    }

    fn separated(&self, a: Set, b: Set) -> bool {
        let around_a: Vec<Set> = self.opens.iter().copied().filter(|&u| subset(a, u)).collect();
        let around_b: Vec<Set> = self.opens.iter().copied().filter(|&v| subset(b, v)).collect();
        around_a.iter().any(|&u| around_b.iter().any(|&v| u & v == 0))
    }

    pub fn hausdorff(&self) -> bool {
        (0..self.k).all(|p| (0..self.k).all(|q| p == q || self.separated(1 << p, 1 << q)))
    }

    /// Every pair of disjoint closed sets has disjoint open neighbourhoods.
    pub fn normal(&self) -> bool {
        let closed = self.closed();
        closed
            .iter()
            .all(|&a| closed.iter().all(|&b| a & b != 0 || self.separated(a, b)))
    }

    /// The subspace on the points of `keep`, re-indexed in increasing order.
    pub fn subspace(&self, keep: Set) -> Self {
        let index: Vec<usize> = members(keep).collect();
        let squeeze = |u: Set| -> Set {
            index
                .iter()
                .enumerate()
                .filter(|(_, &p)| has(u, p))
                .fold(0, |acc, (i, _)| acc | 1 << i)
        };
        Self {
            k: index.len(),
            opens: self.opens.iter().map(|&u| squeeze(u)).collect(),
        }
    }
}
