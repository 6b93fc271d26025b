//! Isomorph-free generation of finite (commutative, integral, bounded)
//! residuated lattices.
//!
//! Lattices are built as naturally labelled posets (every strict predecessor has
//! a smaller index), kept only when their order code is minimal among all
//! natural relabellings. Monoid tables are then filled pair by pair. An entry
//! with a join-reducible argument is forced by join preservation. Free entries
//! range between the products of the lower covers and the meet. Associativity
//! and join preservation are checked as soon as their terms are known. A
//! finished table survives only if it is lexicographically least under the
//! automorphisms of its lattice.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::Analysis;
use crate::bundled::standard_labels;
use crate::coann::{classify_baer_rickart, skeleton};
use crate::error::{Error, Result};
use crate::filters::is_domain;
use crate::lattice::{validate_axioms, BoundedLattice, RawTables, ResiduatedLattice};
use crate::mp::mp_check_analysis;

pub const DEFAULT_CAP: usize = 8;
/// Largest order accepted by [`naive_oracle`].
pub const ORACLE_CAP: usize = 4;
/// Environment variable capping the number of enumeration workers.
pub const THREADS_VAR: &str = "RESLAT_THREADS";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumConfig {
    pub cap: usize,
    /// Worker count; `None` uses rayon's global pool.
    pub threads: Option<usize>,
}

impl Default for EnumConfig {
    fn default() -> Self {
        Self {
            cap: DEFAULT_CAP,
            threads: None,
        }
    }
}

impl EnumConfig {
    /// Default cap with the worker count taken from `RESLAT_THREADS`.
    pub fn from_env() -> Result<Self> {
        let threads = match std::env::var(THREADS_VAR) {
            Ok(v) => match v.trim().parse::<usize>() {
                Ok(t) if t > 0 => Some(t),
                _ => return Err(Error::Contract(format!("{THREADS_VAR} must be a positive integer, got {v:?}"))),
            },
            Err(_) => None,
        };
        Ok(Self {
            threads,
            ..Self::default()
        })
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = Some(threads);
        self
    }

    fn check(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::Contract("order must be at least 1".into()));
        }
        if n > self.cap {
            return Err(Error::CapExceeded { size: n, cap: self.cap });
        }
        Ok(())
    }

    fn install<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T> {
        match self.threads {
            None => Ok(f()),
            Some(t) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(t)
                    .build()
                    .map_err(|e| Error::Contract(format!("cannot build worker pool: {e}")))?;
                Ok(pool.install(f))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub order: usize,
    pub lattices: usize,
    pub residuated: usize,
    pub mp: usize,
    pub rickart: usize,
    pub baer: usize,
    pub domain: usize,
}

// ---------------------------------------------------------------------------
// Lattices

/// Strict down-sets of interior elements, as bitsets over interior indices.
struct Poset {
    below: Vec<u64>,
}

impl Poset {
    fn related(&self, i: usize, j: usize) -> bool {
        self.below[j] >> i & 1 == 1
    }

    /// Bit `k` of the code is set when the k-th pair `(i, j)`, `i < j` in
    /// row-major order, is related; bit 0 is the most significant pair.
    fn code_under(&self, perm: &[usize]) -> u64 {
        let m = self.below.len();
        let mut rel = vec![0u64; m];
        for j in 0..m {
            for i in 0..m {
                if self.related(i, j) {
                    rel[perm[j]] |= 1 << perm[i];
                }
            }
        }
        let mut code = 0u64;
        for i in 0..m {
            for j in i + 1..m {
                code = code << 1 | (rel[j] >> i & 1);
            }
        }
        code
    }

    /// Visits every natural relabelling (linear extension) as a permutation
    /// `old -> new`; stops early when `visit` returns false.
    fn linear_extensions(&self, visit: &mut impl FnMut(&[usize]) -> bool) {
        let m = self.below.len();
        let mut perm = vec![usize::MAX; m];
        fn go(p: &Poset, placed: u64, next: usize, perm: &mut Vec<usize>, visit: &mut impl FnMut(&[usize]) -> bool) -> bool {
            let m = p.below.len();
            if next == m {
                return visit(perm);
            }
            for x in 0..m {
                if placed >> x & 1 == 0 && p.below[x] & !placed == 0 {
                    perm[x] = next;
                    if !go(p, placed | 1 << x, next + 1, perm, visit) {
                        return false;
                    }
                }
            }
            true
        }
        go(self, 0, 0, &mut perm, visit);
    }

    fn is_canonical(&self) -> bool {
        let own = self.code_under(&(0..self.below.len()).collect::<Vec<_>>());
        let mut canonical = true;
        self.linear_extensions(&mut |perm| {
            if self.code_under(perm) < own {
                canonical = false;
            }
            canonical
        });
        canonical
    }

    /// Full order with bottom 0 and top `m + 1`.
    fn leq(&self) -> Vec<Vec<bool>> {
        let m = self.below.len();
        let n = m + 2;
        let mut leq = vec![vec![false; n]; n];
        for x in 0..n {
            leq[0][x] = true;
            leq[x][n - 1] = true;
            leq[x][x] = true;
        }
        for j in 0..m {
            for i in 0..m {
                if self.related(i, j) {
                    leq[i + 1][j + 1] = true;
                }
            }
        }
        leq
    }

    fn is_lattice(&self) -> bool {
        let leq = self.leq();
        let n = leq.len();
        let up: Vec<u64> = (0..n)
            .map(|x| (0..n).filter(|&y| leq[x][y]).fold(0, |s, y| s | 1 << y))
            .collect();
        for x in 1..n - 1 {
            for y in x + 1..n - 1 {
                let common = up[x] & up[y];
                let has_least = (0..n).any(|u| common >> u & 1 == 1 && common & !up[u] == 0);
                if !has_least {
                    return false;
                }
            }
        }
        true
    }
}

fn lattice_shapes(n: usize) -> Vec<(u64, BoundedLattice)> {
    if n == 1 {
        let order = BoundedLattice::from_leq(&[vec![true]]).expect("one-element lattice");
        return vec![(0, order)];
    }
    let m = n - 2;
    let mut out = Vec::new();
    let mut below = Vec::with_capacity(m);
    fn grow(below: &mut Vec<u64>, m: usize, out: &mut Vec<(u64, BoundedLattice)>) {
        let k = below.len();
        if k == m {
            let p = Poset { below: below.clone() };
            if p.is_lattice() && p.is_canonical() {
                let code = p.code_under(&(0..m).collect::<Vec<_>>());
                let order = BoundedLattice::from_leq(&p.leq()).expect("checked lattice order");
                out.push((code, order));
            }
            return;
        }
        for s in 0u64..1 << k {
            let closed = (0..k).all(|i| s >> i & 1 == 0 || below[i] & !s == 0);
            if closed {
                below.push(s);
                grow(below, m, out);
                below.pop();
            }
        }
    }
    grow(&mut below, m, &mut out);
    out.sort_by_key(|&(code, _)| code);
    out
}

/// All bounded lattices of order `n` up to isomorphism, each labelled
/// naturally (bottom 0, top `n - 1`, `x <= y` implies `x <= y` as indices).
pub fn enumerate_bounded_lattices(n: usize, config: &EnumConfig) -> Result<Vec<BoundedLattice>> {
    config.check(n)?;
    Ok(lattice_shapes(n).into_iter().map(|(_, l)| l).collect())
}

// ---------------------------------------------------------------------------
// Monoid tables

const UNKNOWN: u8 = u8::MAX;

fn is_natural(order: &BoundedLattice) -> bool {
    let n = order.size();
    order.bottom() == 0
        && order.top() == n - 1
        && (0..n).all(|x| (0..n).all(|y| !order.leq(x, y) || x <= y))
}

/// Lattice automorphisms as permutations.
fn automorphisms(order: &BoundedLattice) -> Vec<Vec<usize>> {
    let n = order.size();
    let mut out = Vec::new();
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        order: &BoundedLattice,
        x: usize,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = order.size();
        if x == n {
            out.push(perm.clone());
            return;
        }
        for y in 0..n {
            if used[y] {
                continue;
            }
            let ok = (0..x).all(|w| order.leq(w, x) == order.leq(perm[w], y) && order.leq(x, w) == order.leq(y, perm[w]));
            if ok {
                perm[x] = y;
                used[y] = true;
                go(order, x + 1, perm, used, out);
                used[y] = false;
            }
        }
        perm[x] = usize::MAX;
    }
    go(order, 0, &mut perm, &mut used, &mut out);
    out
}

struct Extender<'a> {
    order: &'a BoundedLattice,
    n: usize,
    /// Interior pairs `(i, j)`, `i <= j`, in row-major order.
    pairs: Vec<(usize, usize)>,
    lower_covers: Vec<Vec<usize>>,
    /// Incomparable pairs joining to each element.
    join_pairs: Vec<Vec<(usize, usize)>>,
    automorphisms: Vec<Vec<usize>>,
    table: Vec<u8>,
    found: Vec<Vec<u8>>,
}

impl<'a> Extender<'a> {
    fn new(order: &'a BoundedLattice) -> Self {
        let n = order.size();
        let top = n - 1;
        let pairs = (1..top).flat_map(|i| (i..top).map(move |j| (i, j))).collect();
        let lower_covers = (0..n).map(|x| order.lower_covers(x).iter().collect()).collect();
        let mut join_pairs = vec![Vec::new(); n];
        for y in 0..n {
            for z in y + 1..n {
                if !order.leq(y, z) && !order.leq(z, y) {
                    join_pairs[order.join(y, z)].push((y, z));
                }
            }
        }
        let mut table = vec![UNKNOWN; n * n];
        for x in 0..n {
            table[x] = 0;
            table[x * n] = 0;
            table[top * n + x] = x as u8;
            table[x * n + top] = x as u8;
        }
        Self {
            order,
            n,
            pairs,
            lower_covers,
            join_pairs,
            automorphisms: automorphisms(order),
            table,
            found: Vec::new(),
        }
    }

    fn get(&self, x: usize, y: usize) -> u8 {
        self.table[x * self.n + y]
    }

    fn set(&mut self, x: usize, y: usize, v: u8) {
        self.table[x * self.n + y] = v;
        self.table[y * self.n + x] = v;
    }

    fn join(&self, x: u8, y: u8) -> u8 {
        self.order.join(x as usize, y as usize) as u8
    }

    fn join_row(&self, xs: &[usize], y: usize) -> u8 {
        xs.iter().fold(0, |acc, &c| self.join(acc, self.get(c, y)))
    }

    /// Checks every identity whose terms became known with the entry `(i, j)`.
    fn consistent_at(&self, i: usize, j: usize) -> bool {
        let v = self.get(i, j);
        let top = self.n - 1;
        for &(y, z) in &self.join_pairs[j] {
            let (a, b) = (self.get(i, y), self.get(i, z));
            if a != UNKNOWN && b != UNKNOWN && v != self.join(a, b) {
                return false;
            }
        }
        for &(x, w) in &self.join_pairs[i] {
            let (a, b) = (self.get(x, j), self.get(w, j));
            if a != UNKNOWN && b != UNKNOWN && v != self.join(a, b) {
                return false;
            }
        }
        for &(p, q) in [(i, j), (j, i)].iter() {
            for &(y, z) in &self.join_pairs[top] {
                let other = if y == q {
                    z
                } else if z == q {
                    y
                } else {
                    continue;
                };
                let w = self.get(p, other);
                if w != UNKNOWN && self.join(v, w) as usize != p {
                    return false;
                }
            }
        }
        for k in 0..self.n {
            let mut seen = UNKNOWN;
            for (a, b, c) in [(i, j, k), (i, k, j), (j, k, i)] {
                let ab = self.get(a, b);
                if ab == UNKNOWN {
                    continue;
                }
                let r = self.get(ab as usize, c);
                if r == UNKNOWN {
                    continue;
                }
                if seen == UNKNOWN {
                    seen = r;
                } else if seen != r {
                    return false;
                }
            }
        }
        true
    }

    fn complete_table_valid(&self) -> bool {
        let n = self.n;
        for x in 0..n {
            for y in 0..n {
                let xy = self.get(x, y) as usize;
                for z in 0..n {
                    if self.get(xy, z) != self.get(x, self.get(y, z) as usize) {
                        return false;
                    }
                    let lhs = self.get(x, self.order.join(y, z));
                    if lhs != self.join(self.get(x, y), self.get(x, z)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn is_least_in_orbit(&self) -> bool {
        let n = self.n;
        let mut image = vec![0u8; n * n];
        self.automorphisms.iter().all(|p| {
            for x in 0..n {
                for y in 0..n {
                    image[p[x] * n + p[y]] = p[self.get(x, y) as usize] as u8;
                }
            }
            self.table <= image
        })
    }

    fn search(&mut self, k: usize) {
        if k == self.pairs.len() {
            if self.complete_table_valid() && self.is_least_in_orbit() {
                self.found.push(self.table.clone());
            }
            return;
        }
        let (i, j) = self.pairs[k];
        let (lci, lcj) = (&self.lower_covers[i], &self.lower_covers[j]);
        let candidates: Vec<u8> = if lci.len() > 1 {
            vec![self.join_row(lci, j)]
        } else if lcj.len() > 1 {
            vec![self.join_row(lcj, i)]
        } else {
            let lo = self.join(self.join_row(lci, j), self.join_row(lcj, i)) as usize;
            let hi = self.order.meet(i, j);
            (lo..=hi)
                .filter(|&v| self.order.leq(lo, v) && self.order.leq(v, hi))
                .map(|v| v as u8)
                .collect()
        };
        for v in candidates {
            self.set(i, j, v);
            if self.consistent_at(i, j) {
                self.search(k + 1);
            }
        }
        self.set(i, j, UNKNOWN);
    }
}

fn tables_for(order: &BoundedLattice) -> Vec<Vec<u8>> {
    let mut ext = Extender::new(order);
    ext.search(0);
    ext.found
}

fn build(order: &BoundedLattice, table: &[u8]) -> Result<ResiduatedLattice> {
    let n = order.size();
    let odot = (0..n).map(|x| (0..n).map(|y| table[x * n + y] as usize).collect()).collect();
    ResiduatedLattice::from_order(standard_labels(n), order.clone(), odot)
}

/// All residuated structures on `order` up to lattice automorphism.
pub fn extend_to_residuated(order: &BoundedLattice) -> Result<Vec<ResiduatedLattice>> {
    if is_natural(order) {
        return tables_for(order).iter().map(|t| build(order, t)).collect();
    }
    // Relabel along a linear extension, then map the results back.
    let n = order.size();
    let mut to_natural = vec![0; n];
    let mut by_rank: Vec<usize> = (0..n).collect();
    by_rank.sort_by_key(|&x| (order.down(x).len(), x));
    for (new, &old) in by_rank.iter().enumerate() {
        to_natural[old] = new;
    }
    let leq: Vec<Vec<bool>> = (0..n)
        .map(|a| (0..n).map(|b| order.leq(by_rank[a], by_rank[b])).collect())
        .collect();
    let natural = BoundedLattice::from_leq(&leq)?;
    let back: Vec<usize> = (0..n).map(|new| by_rank[new]).collect();
    tables_for(&natural)
        .iter()
        .map(|t| build(&natural, t)?.relabel(&back))
        .collect()
}

/// All residuated lattices of order `n` up to isomorphism, in a fixed order
/// independent of the worker count.
pub fn enumerate_residuated(n: usize, config: &EnumConfig) -> Result<Vec<ResiduatedLattice>> {
    config.check(n)?;
    let shapes = lattice_shapes(n);
    let per_shape: Vec<Vec<Vec<u8>>> =
        config.install(|| shapes.par_iter().map(|(_, order)| tables_for(order)).collect())?;
    let mut out = Vec::new();
    for ((_, order), tables) in shapes.iter().zip(per_shape) {
        for t in tables {
            let k = out.len() + 1;
            out.push(build(order, &t)?.with_name(format!("R{n}.{k}")));
        }
    }
    Ok(out)
}

fn census_flags(l: ResiduatedLattice) -> Result<[bool; 4]> {
    let domain = is_domain(&l).domain;
    let an = Analysis::new(l)?;
    let mp = mp_check_analysis(&an)?.final_verdict;
    let br = classify_baer_rickart(&an, &skeleton(&an)?);
    Ok([mp, br.rickart, br.baer, domain])
}

/// Per-order counts for orders `1..=n_max`.
pub fn census(n_max: usize, config: &EnumConfig) -> Result<Vec<CensusRow>> {
    config.check(n_max)?;
    (1..=n_max)
        .map(|n| {
            let lattices = lattice_shapes(n).len();
            let all = enumerate_residuated(n, config)?;
            let residuated = all.len();
            let flags: Vec<[bool; 4]> =
                config.install(|| all.into_par_iter().map(census_flags).collect::<Result<_>>())??;
            let count = |i: usize| flags.iter().filter(|f| f[i]).count();
            Ok(CensusRow {
                order: n,
                lattices,
                residuated,
                mp: count(0),
                rickart: count(1),
                baer: count(2),
                domain: count(3),
            })
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Oracle

/// Isomorphism invariant: the least `(order, monoid)` encoding over all
/// relabellings. Exponential; meant for small orders.
pub fn isomorphism_key(l: &ResiduatedLattice) -> Vec<u8> {
    let n = l.size();
    let mut best: Option<Vec<u8>> = None;
    let mut perm: Vec<usize> = (0..n).collect();
    let mut encode = |perm: &[usize]| {
        let mut inv = vec![0; n];
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        let mut key = Vec::with_capacity(2 * n * n);
        for a in 0..n {
            for b in 0..n {
                key.push(l.leq(inv[a], inv[b]) as u8);
            }
        }
        for a in 0..n {
            for b in 0..n {
                key.push(perm[l.odot(inv[a], inv[b])] as u8);
            }
        }
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
    };
    // Heap's algorithm.
    let mut c = vec![0; n];
    encode(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            encode(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best.expect("at least one permutation")
}

fn naive_residuum(n: usize, leq: &[Vec<bool>], odot: &[Vec<usize>]) -> Option<Vec<Vec<usize>>> {
    let mut imp = vec![vec![0; n]; n];
    for x in 0..n {
        for y in 0..n {
            let ok: Vec<usize> = (0..n).filter(|&z| leq[odot[x][z]][y]).collect();
            imp[x][y] = *ok.iter().find(|&&z| ok.iter().all(|&w| leq[w][z]))?;
        }
    }
    Some(imp)
}

/// Brute force: every order relation, every commutative table with the top
/// as unit, filtered by [`validate_axioms`] and deduplicated by
/// [`isomorphism_key`]. Shares no search logic with the fast path.
pub fn naive_oracle(n: usize) -> Result<Vec<ResiduatedLattice>> {
    if n == 0 {
        return Err(Error::Contract("order must be at least 1".into()));
    }
    if n > ORACLE_CAP {
        return Err(Error::CapExceeded { size: n, cap: ORACLE_CAP });
    }
    let off_diagonal: Vec<(usize, usize)> =
        (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).collect();
    let mut found: BTreeMap<Vec<u8>, ResiduatedLattice> = BTreeMap::new();
    for bits in 0u64..1 << off_diagonal.len() {
        let mut leq = vec![vec![false; n]; n];
        for (x, row) in leq.iter_mut().enumerate() {
            row[x] = true;
        }
        for (k, &(a, b)) in off_diagonal.iter().enumerate() {
            leq[a][b] = bits >> k & 1 == 1;
        }
        let Ok(order) = BoundedLattice::from_leq(&leq) else {
            continue;
        };
        let (bottom, top) = (order.bottom(), order.top());
        let mut labels = vec![String::new(); n];
        let mut letter = b'a';
        for (x, label) in labels.iter_mut().enumerate() {
            *label = if x == bottom {
                "0".into()
            } else if x == top {
                "1".into()
            } else {
                letter += 1;
                char::from(letter - 1).to_string()
            };
        }
        let free: Vec<(usize, usize)> = (0..n)
            .filter(|&x| x != top)
            .flat_map(|x| (x..n).filter(|&y| y != top).map(move |y| (x, y)))
            .collect();
        let mut odot = vec![vec![0; n]; n];
        for x in 0..n {
            odot[top][x] = x;
            odot[x][top] = x;
        }
        let total = (n as u64).pow(free.len() as u32);
        for mut code in 0..total {
            for &(x, y) in &free {
                let v = (code % n as u64) as usize;
                code /= n as u64;
                odot[x][y] = v;
                odot[y][x] = v;
            }
            let Some(imp) = naive_residuum(n, &leq, &odot) else {
                continue;
            };
            let raw = RawTables {
                labels: labels.clone(),
                leq: leq.clone(),
                join: order.join_matrix(),
                meet: order.meet_matrix(),
                odot: odot.clone(),
                imp,
                bottom,
                top,
            };
            if !validate_axioms(&raw)?.valid {
                continue;
            }
            let l = ResiduatedLattice::new(raw)?;
            found.entry(isomorphism_key(&l)).or_insert(l);
        }
    }
    Ok(found.into_values().collect())
}
