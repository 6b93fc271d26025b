//! Lattices shipped with the crate.

use crate::io::parse_lattice;
use crate::lattice::{BoundedLattice, ResiduatedLattice};

/// Six-element residuated lattice with a unique coatom; it is mp.
pub const A6_JSON: &str = include_str!("../data/a6.json");
/// Eight-element residuated lattice whose maximal filter holds two minimal primes.
pub const A8_JSON: &str = include_str!("../data/a8.json");

pub fn a6() -> ResiduatedLattice {
    parse_lattice(A6_JSON).expect("bundled a6.json is valid")
}

pub fn a8() -> ResiduatedLattice {
    parse_lattice(A8_JSON).expect("bundled a8.json is valid")
}

/// `0, a, b, ..., 1` for a lattice with bottom 0 and top `n - 1`.
pub fn standard_labels(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| match i {
            0 => "0".to_string(),
            i if i == n - 1 => "1".to_string(),
            i if i <= 26 => char::from(b'a' + (i - 1) as u8).to_string(),
            i => format!("x{i}"),
        })
        .collect()
}

fn chain_with(n: usize, name: &str, odot: impl Fn(usize, usize) -> usize) -> ResiduatedLattice {
    assert!(n >= 1);
    let covers: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    let order = BoundedLattice::from_covers(n, &covers).expect("chain order");
    let labels = standard_labels(n);
    let table = (0..n).map(|x| (0..n).map(|y| odot(x, y)).collect()).collect();
    ResiduatedLattice::from_order(labels, order, table)
        .expect("chain monoid is residuated")
        .with_name(name)
}

/// `n`-element chain with `x * y = x ^ y` (Goedel chain).
pub fn godel_chain(n: usize) -> ResiduatedLattice {
    chain_with(n, &format!("G{n}"), |x, y| x.min(y))
}

/// `n`-element chain with truncated addition (Lukasiewicz chain).
pub fn lukasiewicz_chain(n: usize) -> ResiduatedLattice {
    chain_with(n, &format!("L{n}"), move |x, y| (x + y).saturating_sub(n - 1))
}

/// The four-element Boolean algebra `{0, a, b, 1}`.
pub fn boolean4() -> ResiduatedLattice {
    let order = BoundedLattice::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).expect("2x2 order");
    let odot = (0..4).map(|x| (0..4).map(|y| order.meet(x, y)).collect()).collect();
    let labels = ["0", "a", "b", "1"].map(String::from).to_vec();
    ResiduatedLattice::from_order(labels, order, odot)
        .expect("Boolean algebra")
        .with_name("B4")
}
