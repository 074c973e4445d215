//! Exact area of unions of vertical-sided parallelograms.
//!
//! Every edge of a member is a line `y = c + s·x` over the member's x-range.
//! Between two consecutive *events* (abscissae where two edge lines cross, or
//! where a member starts or ends) the order of all slice endpoints is fixed,
//! so the length of the merged vertical slice is affine in `x` and its
//! integral over the segment is the midpoint value times the width.
//!
//! Exact scalars whose values share a modest common denominator are swept on
//! an integer lattice; everything else goes through the generic path.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{Interval, Point, VParallelogram};
use crate::scalar::{max_of, min_of, Scalar};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct ParallelogramUnion<T> {
    pub members: Vec<VParallelogram<T>>,
}

impl<T: Scalar> ParallelogramUnion<T> {
    pub fn new(members: Vec<VParallelogram<T>>) -> Self {
        ParallelogramUnion { members }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, p: &Point<T>) -> bool {
        self.members.iter().any(|m| m.contains(p))
    }

    /// Members clipped to the slab `[lo, hi] × ℝ`.
    pub fn restrict(&self, lo: &T, hi: &T) -> ParallelogramUnion<T> {
        ParallelogramUnion::new(self.members.iter().filter_map(|m| m.restrict(lo, hi)).collect())
    }

    pub fn slice_intervals(&self, x: &T) -> Vec<Interval<T>> {
        slice_intervals(self, x)
    }

    pub fn measure(&self, lo: &T, hi: &T) -> T {
        union_measure(self, lo, hi)
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U + Copy) -> ParallelogramUnion<U> {
        ParallelogramUnion::new(self.members.iter().map(|m| m.map(f)).collect())
    }
}

/// Sorted, merged vertical cross-section of the union at `x`.
pub fn slice_intervals<T: Scalar>(u: &ParallelogramUnion<T>, x: &T) -> Vec<Interval<T>> {
    let mut slices: Vec<Interval<T>> = u.members.iter().filter_map(|m| m.slice_at(x)).collect();
    slices.sort_by(|a, b| a.lo.partial_cmp(&b.lo).expect("comparable scalars"));
    let mut merged: Vec<Interval<T>> = Vec::with_capacity(slices.len());
    for s in slices {
        match merged.last_mut() {
            Some(last) if s.lo <= last.hi => last.hi = max_of(last.hi.clone(), s.hi),
            _ => merged.push(s),
        }
    }
    merged
}

/// Area of `(⋃ U) ∩ ([lo, hi] × ℝ)`.
pub fn union_measure<T: Scalar>(u: &ParallelogramUnion<T>, lo: &T, hi: &T) -> T {
    sweep(&u.members, None, lo, hi)
}

/// Area of `(⋃ U) ∩ window ∩ ([lo, hi] × ℝ)`.
pub fn union_measure_within<T: Scalar>(u: &ParallelogramUnion<T>, window: &VParallelogram<T>, lo: &T, hi: &T) -> T {
    sweep(&u.members, Some(window), lo, hi)
}

fn sweep<T: Scalar>(members: &[VParallelogram<T>], window: Option<&VParallelogram<T>>, lo: &T, hi: &T) -> T {
    if lo >= hi || members.is_empty() {
        return T::zero();
    }
    if T::EXACT {
        if let Some(area) = LatticeSweep::build(members, window, lo, hi).and_then(|s| s.run()) {
            return T::from_exact(&area);
        }
    }
    generic_sweep(members, window, lo, hi)
}

fn generic_sweep<T: Scalar>(members: &[VParallelogram<T>], window: Option<&VParallelogram<T>>, lo: &T, hi: &T) -> T {
    let inside = |x: &T| lo < x && x < hi;
    let mut events = vec![lo.clone(), hi.clone()];
    // (intercept, slope, owner)
    let mut lines: Vec<(T, T, usize)> = Vec::with_capacity(2 * members.len() + 2);
    for (i, m) in members.iter().chain(window).enumerate() {
        for x in [&m.x0, &m.x1] {
            if inside(x) {
                events.push(x.clone());
            }
        }
        let c = m.intercept();
        lines.push((c.clone() + m.side_length.clone(), m.slope.clone(), i));
        lines.push((c, m.slope.clone(), i));
    }
    for (i, (ci, si, oi)) in lines.iter().enumerate() {
        for (cj, sj, oj) in &lines[i + 1..] {
            if oi == oj || si == sj {
                continue;
            }
            let x = (cj.clone() - ci.clone()) / (si.clone() - sj.clone());
            if inside(&x) {
                events.push(x);
            }
        }
    }
    events.sort_by(|a, b| a.partial_cmp(b).expect("comparable scalars"));
    events.dedup();

    let two = T::two();
    let mut total = T::zero();
    for w in events.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let width = b.clone() - a.clone();
        let mid = (a.clone() + b.clone()) / two.clone();
        let len = covered_length(members, window, &mid);
        if T::EXACT && cfg!(debug_assertions) {
            let quarter = width.clone() / (two.clone() * two.clone());
            let l1 = covered_length(members, window, &(mid.clone() - quarter.clone()));
            let l3 = covered_length(members, window, &(mid.clone() + quarter));
            debug_assert!(l1 + l3 == len.clone() * two.clone(), "slice length not affine between events");
        }
        total = total + len * width;
    }
    total
}

fn covered_length<T: Scalar>(members: &[VParallelogram<T>], window: Option<&VParallelogram<T>>, x: &T) -> T {
    let clip = match window {
        Some(w) => match w.slice_at(x) {
            Some(s) => Some(s),
            None => return T::zero(),
        },
        None => None,
    };
    let mut slices: Vec<Interval<T>> = members.iter().filter_map(|m| m.slice_at(x)).collect();
    slices.sort_by(|a, b| a.lo.partial_cmp(&b.lo).expect("comparable scalars"));
    let mut total = T::zero();
    let mut current: Option<Interval<T>> = None;
    let mut flush = |iv: Interval<T>| {
        let (lo, hi) = match &clip {
            Some(c) => (max_of(iv.lo, c.lo.clone()), min_of(iv.hi, c.hi.clone())),
            None => (iv.lo, iv.hi),
        };
        if lo < hi {
            total = total.clone() + (hi - lo);
        }
    };
    for s in slices {
        current = match current {
            Some(mut cur) if s.lo <= cur.hi => {
                cur.hi = max_of(cur.hi, s.hi);
                Some(cur)
            }
            Some(cur) => {
                flush(cur);
                Some(s)
            }
            None => Some(s),
        };
    }
    if let Some(cur) = current {
        flush(cur);
    }
    total
}

/// Largest common denominator the lattice sweep accepts.
const LATTICE_MAX_DENOMINATOR: u64 = 1 << 20;
/// Largest scaled coordinate magnitude the lattice sweep accepts.
const LATTICE_MAX_COORD: i128 = 1 << 40;

/// A member in scaled coordinates `u = D·x`, `v = D²·y`: its edges are
/// `v = c + s·u` and `v = c + s·u + h`.
#[derive(Clone, Copy, Debug)]
struct LatticeStrip {
    u0: i128,
    u1: i128,
    c: i128,
    s: i128,
    h: i128,
}

struct LatticeSweep {
    denom: BigInt,
    strips: Vec<LatticeStrip>,
    window: Option<LatticeStrip>,
    lo: i128,
    hi: i128,
}

impl LatticeSweep {
    fn build<T: Scalar>(
        members: &[VParallelogram<T>],
        window: Option<&VParallelogram<T>>,
        lo: &T,
        hi: &T,
    ) -> Option<Self> {
        let exact = |v: &T| v.to_exact();
        let mut values = vec![exact(lo)?, exact(hi)?];
        let all: Vec<&VParallelogram<T>> = members.iter().chain(window).collect();
        for m in &all {
            for v in [&m.x0, &m.x1, &m.y_bottom_left, &m.slope, &m.side_length] {
                values.push(exact(v)?);
            }
        }
        let mut d = BigInt::one();
        for v in &values {
            d = d.lcm(v.denom());
            if d > BigInt::from(LATTICE_MAX_DENOMINATOR) {
                return None;
            }
        }
        let di = d.to_i128()?;
        let scale = |v: &BigRational| -> Option<i128> {
            let n = (v.numer() * (&d / v.denom())).to_i128()?;
            (n.abs() <= LATTICE_MAX_COORD).then_some(n)
        };
        let strip = |m: &VParallelogram<T>| -> Option<LatticeStrip> {
            let u0 = scale(&exact(&m.x0)?)?;
            let u1 = scale(&exact(&m.x1)?)?;
            let y = scale(&exact(&m.y_bottom_left)?)?;
            let s = scale(&exact(&m.slope)?)?;
            let h = scale(&exact(&m.side_length)?)?;
            let c = di.checked_mul(y)?.checked_sub(s.checked_mul(u0)?)?;
            Some(LatticeStrip { u0, u1, c, s, h: di.checked_mul(h)? })
        };
        Some(LatticeSweep {
            strips: members.iter().map(strip).collect::<Option<Vec<_>>>()?,
            window: match window {
                Some(w) => Some(strip(w)?),
                None => None,
            },
            lo: scale(&values[0])?,
            hi: scale(&values[1])?,
            denom: d,
        })
    }

    /// Sorted distinct event abscissae as reduced fractions `(num, den)`.
    fn events(&self) -> Option<Vec<(i128, i128)>> {
        let (lo, hi) = (self.lo, self.hi);
        let mut events = vec![(lo, 1), (hi, 1)];
        let all: Vec<&LatticeStrip> = self.strips.iter().chain(self.window.as_ref()).collect();
        for st in &all {
            for u in [st.u0, st.u1] {
                if lo < u && u < hi {
                    events.push((u, 1));
                }
            }
        }
        for (i, a) in all.iter().enumerate() {
            for b in &all[i + 1..] {
                if a.s == b.s {
                    continue;
                }
                let den = a.s - b.s;
                for (ca, cb) in [(a.c, b.c), (a.c + a.h, b.c), (a.c, b.c + b.h), (a.c + a.h, b.c + b.h)] {
                    let (mut n, mut d) = (cb.checked_sub(ca)?, den);
                    if d < 0 {
                        n = -n;
                        d = -d;
                    }
                    // lo < n/d < hi
                    if n > lo.checked_mul(d)? && n < hi.checked_mul(d)? {
                        let g = n.gcd(&d);
                        events.push((n / g, d / g));
                    }
                }
            }
        }
        let mut failed = false;
        events.sort_unstable_by(|&(n1, d1), &(n2, d2)| match (n1.checked_mul(d2), n2.checked_mul(d1)) {
            (Some(l), Some(r)) => l.cmp(&r),
            _ => {
                failed = true;
                std::cmp::Ordering::Equal
            }
        });
        if failed {
            return None;
        }
        events.dedup();
        Some(events)
    }

    fn run(&self) -> Option<BigRational> {
        let events = self.events()?;
        let d3 = self.denom.pow(3);
        let mut buf: Vec<(i128, i128)> = Vec::with_capacity(self.strips.len());
        let mut total = BigRational::zero();
        for w in events.windows(2) {
            let ((na, da), (nb, db)) = (w[0], w[1]);
            // Midpoint p/q.
            let p = na.checked_mul(db)?.checked_add(nb.checked_mul(da)?)?;
            let q = 2 * da.checked_mul(db)?;
            let covered = self.covered_at(p, q, &mut buf)?;
            if covered == 0 {
                continue;
            }
            // covered/(q·D²) · (nb/db − na/da)/D
            let du = nb.checked_mul(da)?.checked_sub(na.checked_mul(db)?)?;
            let num = BigInt::from(covered) * BigInt::from(du);
            let den = BigInt::from(q) * BigInt::from(da) * BigInt::from(db) * &d3;
            total += BigRational::new(num, den);
        }
        Some(total)
    }

    /// Covered slice length at `u = p/q`, in units of `1/(q·D²)`.
    fn covered_at(&self, p: i128, q: i128, buf: &mut Vec<(i128, i128)>) -> Option<i128> {
        let slice = |st: &LatticeStrip| -> Option<Option<(i128, i128)>> {
            if p < st.u0.checked_mul(q)? || p > st.u1.checked_mul(q)? {
                return Some(None);
            }
            let lo = st.c.checked_mul(q)?.checked_add(st.s.checked_mul(p)?)?;
            Some(Some((lo, lo.checked_add(st.h.checked_mul(q)?)?)))
        };
        let clip = match &self.window {
            Some(w) => match slice(w)? {
                Some(iv) => Some(iv),
                None => return Some(0),
            },
            None => None,
        };
        buf.clear();
        for st in &self.strips {
            if let Some(iv) = slice(st)? {
                buf.push(iv);
            }
        }
        buf.sort_unstable();
        let mut total: i128 = 0;
        let mut add = |lo: i128, hi: i128| {
            let (lo, hi) = match clip {
                Some((cl, ch)) => (lo.max(cl), hi.min(ch)),
                None => (lo, hi),
            };
            if lo < hi {
                total += hi - lo;
            }
        };
        let mut cur: Option<(i128, i128)> = None;
        for &(lo, hi) in buf.iter() {
            cur = match cur {
                Some((cl, ch)) if lo <= ch => Some((cl, ch.max(hi))),
                Some((cl, ch)) => {
                    add(cl, ch);
                    Some((lo, hi))
                }
                None => Some((lo, hi)),
            };
        }
        if let Some((cl, ch)) = cur {
            add(cl, ch);
        }
        Some(total)
    }
}

#[cfg(test)]
pub(crate) fn generic_measure_for_tests<T: Scalar>(
    u: &ParallelogramUnion<T>,
    window: Option<&VParallelogram<T>>,
    lo: &T,
    hi: &T,
) -> T {
    if lo >= hi {
        return T::zero();
    }
    generic_sweep(&u.members, window, lo, hi)
}
