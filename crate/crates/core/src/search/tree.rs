//! Depth-first walk of the index tree `k -> (2k, 2k+1)` carrying the residue
//! pair `(B_k, B_{k+1}) mod m` and the exact degree pair `(e(k), e(k+1))`.
//!
//! Every edge costs one residue addition and one shift. Two coefficient
//! representations share the walk: bit-packed `u128` for `m = 2` (addition
//! is xor) and fixed-width `u16` arrays for general `m`.

use super::CongruenceSpec;

/// Longest coefficient vector needed: `e(k+1) <= 64` for any `k < 2^64`.
const WIDTH: usize = 66;

pub(crate) trait ResiduePoly: Clone {
    fn one(spec: &CongruenceSpec) -> Self;
    fn t(spec: &CongruenceSpec) -> Self;
    fn shift(&self) -> Self;
    fn add(&self, other: &Self, spec: &CongruenceSpec) -> Self;
    /// `1 + r(t + ... + t^e)` exactly, where `e` is the true degree.
    fn matches(&self, e: u32, spec: &CongruenceSpec) -> bool;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Gf2(u128);

impl ResiduePoly for Gf2 {
    fn one(_: &CongruenceSpec) -> Self {
        Gf2(1)
    }

    fn t(_: &CongruenceSpec) -> Self {
        Gf2(2)
    }

    #[inline]
    fn shift(&self) -> Self {
        Gf2(self.0 << 1)
    }

    #[inline]
    fn add(&self, other: &Self, _: &CongruenceSpec) -> Self {
        Gf2(self.0 ^ other.0)
    }

    #[inline]
    fn matches(&self, e: u32, spec: &CongruenceSpec) -> bool {
        let body = if spec.r == 1 {
            ((1u128 << e) - 1) << 1
        } else {
            0
        };
        self.0 == 1 | body
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Residues {
    c: [u16; WIDTH],
    len: u8,
}

impl ResiduePoly for Residues {
    fn one(_: &CongruenceSpec) -> Self {
        let mut c = [0; WIDTH];
        c[0] = 1;
        Residues { c, len: 1 }
    }

    fn t(_: &CongruenceSpec) -> Self {
        let mut c = [0; WIDTH];
        c[1] = 1;
        Residues { c, len: 2 }
    }

    #[inline]
    fn shift(&self) -> Self {
        let mut c = [0; WIDTH];
        let n = self.len as usize;
        c[1..=n].copy_from_slice(&self.c[..n]);
        Residues {
            c,
            len: self.len + 1,
        }
    }

    #[inline]
    fn add(&self, other: &Self, spec: &CongruenceSpec) -> Self {
        let m = spec.m;
        let len = self.len.max(other.len);
        let mut c = self.c;
        for (x, &y) in c[..len as usize].iter_mut().zip(&other.c[..len as usize]) {
            let s = *x as u32 + y as u32;
            *x = if s >= m { (s - m) as u16 } else { s as u16 };
        }
        Residues { c, len }
    }

    #[inline]
    fn matches(&self, e: u32, spec: &CongruenceSpec) -> bool {
        let r = spec.r as u16;
        self.c[0] == 1 && self.c[1..=e as usize].iter().all(|&x| x == r)
    }
}

/// Walk state at node `k`.
#[derive(Clone, Debug)]
pub(crate) struct Node<P> {
    pub k: u64,
    pub lo: P,
    pub hi: P,
    pub e_lo: u32,
    pub e_hi: u32,
}

impl<P: ResiduePoly> Node<P> {
    /// State at `k >= 1`, by scanning the bits of `k`.
    pub fn at(k: u64, spec: &CongruenceSpec) -> Self {
        assert!(k >= 1);
        let mut node = Node {
            k: 1,
            lo: P::one(spec),
            hi: P::t(spec),
            e_lo: 0,
            e_hi: 1,
        };
        let bits = 64 - k.leading_zeros();
        for i in (0..bits - 1).rev() {
            node = node.child((k >> i) & 1 == 1, spec);
        }
        debug_assert_eq!(node.k, k);
        node
    }

    #[inline]
    pub fn child(&self, bit: bool, spec: &CongruenceSpec) -> Self {
        let sum = self.lo.add(&self.hi, spec);
        let e_sum = self.e_lo.max(self.e_hi);
        if bit {
            Node {
                k: 2 * self.k + 1,
                lo: sum,
                hi: self.hi.shift(),
                e_lo: e_sum,
                e_hi: self.e_hi + 1,
            }
        } else {
            Node {
                k: 2 * self.k,
                lo: self.lo.shift(),
                hi: sum,
                e_lo: self.e_lo + 1,
                e_hi: e_sum,
            }
        }
    }
}

/// Push every odd `n` in the subtree rooted at `node` with `n <= bound` that
/// satisfies the congruence. Returns the number of visited nodes.
pub(crate) fn walk<P: ResiduePoly>(
    node: &Node<P>,
    bound: u64,
    spec: &CongruenceSpec,
    out: &mut Vec<u64>,
) -> u64 {
    let mut visited = 1;
    if node.k & 1 == 1 && node.lo.matches(node.e_lo, spec) {
        out.push(node.k);
    }
    let Some(left) = node.k.checked_mul(2) else {
        return visited;
    };
    if left <= bound {
        visited += walk(&node.child(false, spec), bound, spec, out);
        if left < bound {
            visited += walk(&node.child(true, spec), bound, spec, out);
        }
    }
    visited
}

/// Odd solutions `n <= bound` in the subtree rooted at `root`.
pub(crate) fn solve_subtree(root: u64, bound: u64, spec: &CongruenceSpec) -> Vec<u64> {
    let mut out = Vec::new();
    if root > bound {
        return out;
    }
    if spec.m == 2 {
        walk(&Node::<Gf2>::at(root, spec), bound, spec, &mut out);
    } else {
        walk(&Node::<Residues>::at(root, spec), bound, spec, &mut out);
    }
    out
}
