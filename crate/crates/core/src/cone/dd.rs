//! Incremental double description for `{x : A x >= 0}`.
//!
//! Works on primitive integer rows so that combining two rays is a pair of
//! integer multiply-adds followed by a gcd reduction. Inequalities are
//! inserted in lexicographic order. Two rays of opposite sign are combined
//! only when they are adjacent, which is decided by the rank of the processed
//! inequalities tight at both (after a cheap combinatorial prefilter).

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::ratlin::{integer_rank, make_primitive, primitive_integer_row, RVec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn with_capacity(bits: usize) -> Self {
        BitSet {
            words: vec![0; bits.div_ceil(64).max(1)],
        }
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] & (1 << (i % 64)) != 0
    }

    fn intersection(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    fn is_subset(&self, other: &BitSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.words.len() * 64).filter(|&i| self.contains(i))
    }
}

#[derive(Clone, Debug)]
struct Ray {
    v: Vec<BigInt>,
    zeros: BitSet,
}

/// Generators of `{x : A x >= 0}`: extreme rays of the pointed part (taken
/// modulo the lineality space) plus a basis of the lineality space.
#[derive(Clone, Debug, Default)]
pub(crate) struct DdOutput {
    pub rays: Vec<RVec>,
    pub lineality: Vec<RVec>,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `alpha * x + beta * y`, made primitive.
fn combine(alpha: &BigInt, x: &[BigInt], beta: &BigInt, y: &[BigInt]) -> Vec<BigInt> {
    make_primitive(x.iter().zip(y).map(|(a, b)| alpha * a + beta * b).collect())
}

fn lex_cmp(a: &[BigInt], b: &[BigInt]) -> Ordering {
    a.iter().cmp(b.iter())
}

pub(crate) fn enumerate(dim: usize, inequalities: &[RVec]) -> DdOutput {
    let mut rows: Vec<Vec<BigInt>> = inequalities
        .iter()
        .map(|a| primitive_integer_row(a.entries()))
        .filter(|a| a.iter().any(|x| !x.is_zero()))
        .collect();
    rows.sort_by(|a, b| lex_cmp(a, b));
    rows.dedup();
    let total = rows.len();

    let mut lineality: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| {
            let mut e = vec![BigInt::zero(); dim];
            e[i] = BigInt::from(1);
            e
        })
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (t, a) in rows.iter().enumerate() {
        let hit = lineality.iter().position(|l| !dot(a, l).is_zero());
        if let Some(pos) = hit {
            let mut pivot = lineality.remove(pos);
            let mut s = dot(a, &pivot);
            if s.is_negative() {
                pivot = pivot.iter().map(|x| -x).collect();
                s = -s;
            }
            for l in lineality.iter_mut() {
                let sl = dot(a, l);
                if !sl.is_zero() {
                    *l = combine(&s, l, &-sl, &pivot);
                }
            }
            for r in rays.iter_mut() {
                let sr = dot(a, &r.v);
                if !sr.is_zero() {
                    r.v = combine(&s, &r.v, &-sr, &pivot);
                }
                r.zeros.insert(t);
            }
            let mut zeros = BitSet::with_capacity(total);
            for k in 0..t {
                zeros.insert(k);
            }
            rays.push(Ray { v: pivot, zeros });
            continue;
        }

        let values: Vec<BigInt> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_positive())
            .collect();
        let neg: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_negative())
            .collect();
        if neg.is_empty() {
            for (i, r) in rays.iter_mut().enumerate() {
                if values[i].is_zero() {
                    r.zeros.insert(t);
                }
            }
            continue;
        }

        let needed = dim as isize - lineality.len() as isize - 2;
        let mut created = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = rays[p].zeros.intersection(&rays[n].zeros);
                if (common.count() as isize) < needed {
                    continue;
                }
                let blocked = rays
                    .iter()
                    .enumerate()
                    .any(|(k, r)| k != p && k != n && common.is_subset(&r.zeros));
                if blocked {
                    continue;
                }
                let tight: Vec<Vec<BigInt>> = common.iter().map(|k| rows[k].clone()).collect();
                if integer_rank(tight, dim) as isize != needed {
                    continue;
                }
                let v = combine(&values[p], &rays[n].v, &-&values[n], &rays[p].v);
                let mut zeros = common;
                zeros.insert(t);
                created.push(Ray { v, zeros });
            }
        }

        let mut next: Vec<Ray> = Vec::with_capacity(rays.len() + created.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            if values[i].is_negative() {
                continue;
            }
            if values[i].is_zero() {
                r.zeros.insert(t);
            }
            next.push(r);
        }
        next.extend(created);
        rays = next;
    }

    DdOutput {
        rays: rays.iter().map(|r| RVec::from_integers(&r.v)).collect(),
        lineality: lineality.iter().map(|l| RVec::from_integers(l)).collect(),
    }
}
