use crate::error::{Error, Result};
use crate::exactnum::Natural;
use crate::repr::Representation;

/// Parameters of the O swap `(s, rs) → (qr, qs)` with `r = q + d` and
/// `s = qr − d`. Only odd `q > 1` and even `d > 0` are accepted; under those
/// conditions the swap maps odd denominators to odd denominators.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OParams {
    q: Natural,
    d: Natural,
}

impl OParams {
    pub fn new(q: impl Into<Natural>, d: impl Into<Natural>) -> Result<Self> {
        let (q, d) = (q.into(), d.into());
        if q <= Natural::one() || q.is_even() || d.is_zero() || d.is_odd() {
            return Err(Error::PreconditionParity { q, d });
        }
        Ok(OParams { q, d })
    }

    /// Recovers the parameters for which `(s, t)` is an `(s, rs)` pair, if any.
    pub fn for_pair(s: &Natural, t: &Natural) -> Option<Self> {
        if s.is_zero() || !s.divides(t) {
            return None;
        }
        let r = t / s;
        // s = q(r + 1) − r
        let (q, rem) = (s + &r).div_rem(&(&r + 1u64));
        if !rem.is_zero() {
            return None;
        }
        let d = r.checked_sub(&q)?;
        OParams::new(q, d).ok()
    }

    pub fn q(&self) -> &Natural {
        &self.q
    }

    pub fn d(&self) -> &Natural {
        &self.d
    }

    pub fn r(&self) -> Natural {
        &self.q + &self.d
    }

    pub fn s(&self) -> Natural {
        &(&self.q * &self.r()) - &self.d
    }

    /// The pair `(s, rs)` the swap consumes.
    pub fn source_pair(&self) -> (Natural, Natural) {
        let s = self.s();
        let rs = &self.r() * &s;
        (s, rs)
    }

    /// The pair `(qr, qs)` the swap produces.
    pub fn result_pair(&self) -> (Natural, Natural) {
        (&self.q * &self.r(), &self.q * &self.s())
    }
}

/// Positions of the `pair_index`-th `(s, rs)` pair: the n-th occurrence of
/// `s` matched with the n-th occurrence of `rs`.
fn locate(rep: &Representation, s: &Natural, rs: &Natural, pair_index: usize) -> Option<(usize, usize)> {
    let nth = |v: &Natural| {
        rep.denoms()
            .iter()
            .enumerate()
            .filter(|(_, x)| *x == v)
            .nth(pair_index)
            .map(|(i, _)| i)
    };
    let i = nth(s)?;
    let j = nth(rs)?;
    Some((i, j))
}

/// Applies O to the first `(s, rs)` pair in canonical order.
pub fn o_swap(rep: &Representation, params: &OParams) -> Result<Representation> {
    o_swap_at(rep, params, 0)
}

/// Applies O to the `pair_index`-th `(s, rs)` pair.
pub fn o_swap_at(rep: &Representation, params: &OParams, pair_index: usize) -> Result<Representation> {
    let (s, rs) = params.source_pair();
    let (i, j) = locate(rep, &s, &rs, pair_index).ok_or(Error::PatternAbsent {
        s: s.clone(),
        rs: rs.clone(),
    })?;
    let (qr, qs) = params.result_pair();
    let mut out: Vec<Natural> = rep
        .denoms()
        .iter()
        .enumerate()
        .filter(|(x, _)| *x != i && *x != j)
        .map(|(_, v)| v.clone())
        .collect();
    out.push(qr);
    out.push(qs);
    out.sort();
    Ok(Representation::from_parts_unchecked(rep.target().clone(), out))
}
