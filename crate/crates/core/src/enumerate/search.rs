//! Depth-first branch-and-bound over nondecreasing denominator lists.
//!
//! A frame is the remaining target `a/b` (reduced), the number of parts
//! still to place `m`, and the floor `lo` for the next denominator. The
//! next denominator `v` runs over `max(lo, ⌊b/a⌋+1) ..= ⌊m·b/a⌋`, stepping
//! by two when only odd denominators are admitted. The last two parts are
//! solved directly: `a/b = 1/x + 1/y` iff `(a·x − b)(a·y − b) = b²`, so the
//! pair is read off the divisors of `b²` instead of scanning `x`.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use super::word::Word;
use super::{Progress, ProgressHook};
use crate::exactnum::{self, Natural};

/// Below this many candidates the pair level scans `x` directly.
const PAIR_SCAN_LIMIT: u64 = 48;

/// State shared by every task of one search.
pub(crate) struct Shared {
    pub nodes: AtomicU64,
    pub found: AtomicU64,
    pub budget_hit: AtomicBool,
    pub node_budget: Option<u64>,
    pub progress: Option<(u64, ProgressHook)>,
}

impl Shared {
    pub fn new(node_budget: Option<u64>, progress: Option<(u64, ProgressHook)>) -> Self {
        Shared {
            nodes: AtomicU64::new(0),
            found: AtomicU64::new(0),
            budget_hit: AtomicBool::new(false),
            node_budget,
            progress,
        }
    }

    pub fn nodes_visited(&self) -> u64 {
        let n = self.nodes.load(Ordering::Relaxed);
        self.node_budget.map_or(n, |b| n.min(b))
    }
}

/// Per-task sink and stop state.
pub(crate) struct Ctx<'s> {
    shared: &'s Shared,
    forbid: &'s [Natural],
    collect: bool,
    /// Stop once this many results have been produced locally.
    limit: Option<u64>,
    pub results: Vec<Vec<Natural>>,
    pub count: u64,
    pub halted: bool,
}

impl<'s> Ctx<'s> {
    pub fn new(shared: &'s Shared, forbid: &'s [Natural], collect: bool, limit: Option<u64>) -> Self {
        Ctx {
            shared,
            forbid,
            collect,
            limit,
            results: Vec::new(),
            count: 0,
            halted: false,
        }
    }

    #[inline]
    pub fn tick(&mut self, depth: usize) -> bool {
        if self.halted {
            return false;
        }
        let n = self.shared.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if let Some(b) = self.shared.node_budget {
            if n > b {
                self.shared.budget_hit.store(true, Ordering::Relaxed);
                self.halted = true;
                return false;
            }
            if self.shared.budget_hit.load(Ordering::Relaxed) {
                self.halted = true;
                return false;
            }
        }
        if let Some((every, hook)) = &self.shared.progress {
            if n.is_multiple_of(*every) {
                hook(&Progress {
                    nodes: n,
                    depth,
                    found: self.shared.found.load(Ordering::Relaxed),
                });
            }
        }
        true
    }

    fn emit<W: Word>(&mut self, path: &[W]) {
        if !self.forbid.is_empty() {
            let l = path.iter().map(Word::to_nat).fold(Natural::one(), |acc, v| acc.lcm(&v));
            if self.forbid.iter().any(|f| f.divides(&l)) {
                return;
            }
        }
        self.count += 1;
        self.shared.found.fetch_add(1, Ordering::Relaxed);
        if self.collect {
            self.results.push(path.iter().map(Word::to_nat).collect());
        }
        if self.limit.is_some_and(|l| self.count >= l) {
            self.halted = true;
        }
    }
}

/// Search parameters that do not depend on the integer backend.
pub(crate) struct Rules {
    pub distinct: bool,
    pub odd: bool,
    pub max_den: Option<Natural>,
    pub target_den: Natural,
}

pub(crate) struct Walker<'c, 's, W: Word> {
    ctx: &'c mut Ctx<'s>,
    rules: &'c Rules,
    max_den: Option<W>,
    step: W,
    path: Vec<W>,
    /// `primes[j]`: primes dividing the target denominator or `path[..j]`.
    primes: Vec<Vec<W>>,
    primes_valid: usize,
}

/// A frame whose range computation overflowed the current backend.
pub(crate) struct Overflow;

/// Candidate interval for the next denominator of a frame with `m ≥ 3`
/// parts left, `None` when empty.
pub(crate) fn frame_range<W: Word>(
    rules: &Rules,
    max_den: Option<&W>,
    a: &W,
    b: &W,
    m: usize,
    lo: &W,
) -> Result<Option<(W, W)>, Overflow> {
    let one = W::from_u64(1);
    let mut vmin = b.div(a).checked_add(&one).ok_or(Overflow)?;
    if &vmin < lo {
        vmin = lo.clone();
    }
    if rules.odd && !vmin.is_odd() {
        vmin = vmin.checked_add(&one).ok_or(Overflow)?;
    }
    let mut vmax = W::from_u64(m as u64).checked_mul(b).ok_or(Overflow)?.div(a);
    if let Some(mx) = max_den {
        if mx < &vmax {
            vmax = mx.clone();
        }
    }
    if vmin > vmax {
        return Ok(None);
    }
    if rules.distinct {
        let step = W::from_u64(if rules.odd { 2 } else { 1 });
        return Ok(tighten_distinct(a, b, m, &vmin, &vmax, &step).map(|hi| (vmin, hi)));
    }
    Ok(Some((vmin, vmax)))
}

impl<'c, 's, W: Word> Walker<'c, 's, W> {
    pub fn new(ctx: &'c mut Ctx<'s>, rules: &'c Rules, path: Vec<W>) -> Self {
        // A cap too large for the backend never binds before overflow does.
        let max_den = rules.max_den.as_ref().and_then(W::from_nat);
        let base = prime_list::<W>(&rules.target_den);
        Walker {
            ctx,
            rules,
            max_den,
            step: W::from_u64(if rules.odd { 2 } else { 1 }),
            path,
            primes: vec![base],
            primes_valid: 0,
        }
    }

    fn widened(&mut self) -> Walker<'_, 's, W::Wide> {
        let path = self.path.iter().map(Word::widen).collect();
        Walker::new(self.ctx, self.rules, path)
    }

    #[inline]
    fn push(&mut self, v: W) {
        self.path.push(v);
        self.primes_valid = self.primes_valid.min(self.path.len() - 1);
    }

    #[inline]
    fn pop(&mut self) {
        self.path.pop();
    }

    pub fn node(&mut self, a: &W, b: &W, m: usize, lo: &W) {
        if !self.ctx.tick(self.path.len()) {
            return;
        }
        if self.rules.odd && !odd_feasible(a, b, m) {
            return;
        }
        match m {
            1 => self.finish_single(a, b, lo),
            2 => self.solve_pair(a, b, lo),
            _ => self.branch(a, b, m, lo),
        }
    }

    fn finish_single(&mut self, a: &W, b: &W, lo: &W) {
        if a.is_one() && b >= lo && self.max_den.as_ref().is_none_or(|mx| b <= mx) {
            self.push(b.clone());
            self.ctx.emit(&self.path);
            self.pop();
        }
    }

    fn branch(&mut self, a: &W, b: &W, m: usize, lo: &W) {
        let (vmin, vmax) = match frame_range(self.rules, self.max_den.as_ref(), a, b, m, lo) {
            Ok(Some(r)) => r,
            Ok(None) => return,
            Err(Overflow) => {
                let (a, b, lo) = (a.widen(), b.widen(), lo.widen());
                self.widened().branch(&a, &b, m, &lo);
                return;
            }
        };
        let mut v = vmin;
        while v <= vmax {
            self.descend(a, b, m, &v);
            if self.ctx.halted {
                return;
            }
            v = v.checked_add(&self.step).expect("bounded by vmax");
        }
    }

    fn descend(&mut self, a: &W, b: &W, m: usize, v: &W) {
        let (Some(av), Some(bv)) = (a.checked_mul(v), b.checked_mul(v)) else {
            let (a, b, v) = (a.widen(), b.widen(), v.widen());
            self.widened().descend(&a, &b, m, &v);
            return;
        };
        let num = av.sub(b);
        let g = num.gcd(&bv);
        let (na, nb) = (num.div(&g), bv.div(&g));
        let nlo = if self.rules.distinct {
            v.checked_add(&W::from_u64(1)).expect("v < b·v")
        } else {
            v.clone()
        };
        self.push(v.clone());
        self.node(&na, &nb, m - 1, &nlo);
        self.pop();
    }

    /// All `x ≤ y` (strict if distinct) with `x ≥ lo` and `1/x + 1/y = a/b`.
    fn solve_pair(&mut self, a: &W, b: &W, lo: &W) {
        let one = W::from_u64(1);
        let two_b = b.checked_add(b);
        let fits = two_b.as_ref().and_then(|t| t.checked_mul(b)).is_some();
        if !fits {
            let (a, b, lo) = (a.widen(), b.widen(), lo.widen());
            self.widened().solve_pair(&a, &b, &lo);
            return;
        }
        let two_b = two_b.unwrap();
        let mut xmin = b.div(a).checked_add(&one).unwrap();
        if &xmin < lo {
            xmin = lo.clone();
        }
        if self.rules.odd && !xmin.is_odd() {
            xmin = xmin.checked_add(&one).unwrap();
        }
        let xmax = two_b.div(a);
        if xmin > xmax {
            return;
        }
        let span = xmax.sub(&xmin).div(&self.step).to_u64();
        let mut pairs = if span.is_some_and(|s| s < PAIR_SCAN_LIMIT) {
            self.scan_pairs(a, b, &xmin, &xmax)
        } else {
            self.divisor_pairs(a, b, &xmin)
        };
        pairs.sort();
        for (x, y) in pairs {
            self.push(x);
            self.push(y);
            self.ctx.emit(&self.path);
            self.pop();
            self.pop();
            if self.ctx.halted {
                return;
            }
        }
    }

    fn pair_ok(&self, x: &W, y: &W) -> bool {
        if self.rules.distinct && x == y {
            return false;
        }
        if self.rules.odd && !(x.is_odd() && y.is_odd()) {
            return false;
        }
        self.max_den.as_ref().is_none_or(|mx| y <= mx)
    }

    fn scan_pairs(&self, a: &W, b: &W, xmin: &W, xmax: &W) -> Vec<(W, W)> {
        let mut out = Vec::new();
        let mut x = xmin.clone();
        while &x <= xmax {
            // a·x ≤ 2b and b·x ≤ 2b² were checked by the caller.
            let num = a.checked_mul(&x).unwrap().sub(b);
            let den = b.checked_mul(&x).unwrap();
            if den.rem(&num).is_zero() {
                let y = den.div(&num);
                if self.pair_ok(&x, &y) {
                    out.push((x.clone(), y));
                }
            }
            x = x.checked_add(&self.step).unwrap();
        }
        out
    }

    fn divisor_pairs(&mut self, a: &W, b: &W, xmin: &W) -> Vec<(W, W)> {
        let factors = self.factor_remaining(b);
        let bb = b.checked_mul(b).unwrap();
        // e = a·x − b ranges over divisors of b² with e ≤ b.
        let ax = a.checked_mul(xmin).unwrap();
        let emin = if &ax > b { ax.sub(b) } else { W::from_u64(1) };
        let mut divs = vec![W::from_u64(1)];
        for (p, k) in &factors {
            let len = divs.len();
            for i in 0..len {
                let mut d = divs[i].clone();
                for _ in 0..2 * k {
                    d = d.checked_mul(p).unwrap();
                    if &d > b {
                        break;
                    }
                    divs.push(d.clone());
                }
            }
        }
        let mut out = Vec::new();
        for e in divs {
            if e < emin {
                continue;
            }
            let xa = b.checked_add(&e).unwrap();
            if !xa.rem(a).is_zero() {
                continue;
            }
            let f = bb.div(&e);
            let ya = b.checked_add(&f).unwrap();
            if !ya.rem(a).is_zero() {
                continue;
            }
            let (x, y) = (xa.div(a), ya.div(a));
            if self.pair_ok(&x, &y) {
                out.push((x, y));
            }
        }
        out
    }

    /// Factors the remaining denominator `b`, whose primes all divide the
    /// target denominator or a denominator on the current path.
    fn factor_remaining(&mut self, b: &W) -> Vec<(W, u32)> {
        let depth = self.path.len();
        while self.primes_valid < depth {
            let j = self.primes_valid + 1;
            self.primes.truncate(j);
            let mut next = self.primes[j - 1].clone();
            let mut rest = self.path[j - 1].clone();
            for p in &self.primes[j - 1] {
                while rest.rem(p).is_zero() {
                    rest = rest.div(p);
                }
            }
            if !rest.is_one() {
                next.extend(prime_list::<W>(&rest.to_nat()));
                next.sort();
                next.dedup();
            }
            self.primes.push(next);
            self.primes_valid = j;
        }
        let mut rest = b.clone();
        let mut out = Vec::new();
        for p in &self.primes[depth] {
            let mut k = 0;
            while rest.rem(p).is_zero() {
                rest = rest.div(p);
                k += 1;
            }
            if k > 0 {
                out.push((p.clone(), k));
            }
        }
        debug_assert!(rest.is_one(), "remaining denominator has an unexpected prime");
        out
    }
}

/// Parity test for odd-only searches: a sum of `m` reciprocals of odd
/// numbers has an odd reduced denominator and a numerator of parity `m`.
#[inline]
pub(crate) fn odd_feasible<W: Word>(a: &W, b: &W, m: usize) -> bool {
    b.is_odd() && a.is_odd() == (m % 2 == 1)
}

/// Largest `v` in `[vmin, vmax]` (on the step lattice from `vmin`) for which
/// `m` distinct parts starting at `v` can still reach `a/b`, i.e.
/// `Σ_{i<m} 1/(v + i·step) ≥ a/b`. Overflow is treated as "reachable".
fn tighten_distinct<W: Word>(a: &W, b: &W, m: usize, vmin: &W, vmax: &W, step: &W) -> Option<W> {
    let reach = |v: &W| -> Option<bool> {
        let (mut p, mut q) = (W::from_u64(0), W::from_u64(1));
        let mut t = v.clone();
        for _ in 0..m {
            // p/q + 1/t
            let np = p.checked_mul(&t)?.checked_add(&q)?;
            let nq = q.checked_mul(&t)?;
            let g = np.gcd(&nq);
            p = np.div(&g);
            q = nq.div(&g);
            t = t.checked_add(step)?;
        }
        Some(p.checked_mul(b)? >= a.checked_mul(&q)?)
    };
    if reach(vmin) == Some(false) {
        return None;
    }
    if reach(vmax) != Some(false) {
        return Some(vmax.clone());
    }
    // reach(vmin + lo·step) holds, reach(vmin + hi·step) fails.
    let steps = vmax.sub(vmin).div(step);
    let (mut lo, mut hi) = (W::from_u64(0), steps);
    let one = W::from_u64(1);
    while hi.sub(&lo) > one {
        let mid = lo.checked_add(&hi).unwrap().div(&W::from_u64(2));
        let v = vmin.checked_add(&mid.checked_mul(step).unwrap()).unwrap();
        if reach(&v) == Some(false) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(vmin.checked_add(&lo.checked_mul(step).unwrap()).unwrap())
}

fn prime_list<W: Word>(n: &Natural) -> Vec<W> {
    let mut out: Vec<W> = match n.to_u64() {
        Some(v) => exactnum::factorize_u64(v)
            .into_iter()
            .map(|(p, _)| W::from_u64(p))
            .collect(),
        None => exactnum::factorize(n)
            .expect("positive")
            .into_iter()
            .map(|(p, _)| W::from_nat(&p).expect("prime factor fits the backend of its multiple"))
            .collect(),
    };
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tighten_matches_linear_scan() {
        for (a, b, m, step) in [(1u128, 1u128, 3usize, 1u128), (1, 1, 9, 2), (2, 7, 3, 1), (4, 45, 4, 2)] {
            let vmin = b / a + 1;
            let vmin = if step == 2 && vmin % 2 == 0 { vmin + 1 } else { vmin };
            let vmax = m as u128 * b / a;
            let got = tighten_distinct(&a, &b, m, &vmin, &vmax, &step);
            // Linear reference with exact Natural arithmetic.
            let mut best = None;
            let mut v = vmin;
            while v <= vmax {
                let sum = crate::exactnum::Ratio::sum_of_units(
                    &(0..m as u128).map(|i| Natural::from(v + i * step)).collect::<Vec<_>>(),
                )
                .unwrap();
                if sum >= crate::exactnum::Ratio::new(a, b).unwrap() {
                    best = Some(v);
                }
                v += step;
            }
            assert_eq!(got, best, "a={a} b={b} m={m} step={step}");
        }
    }
}
