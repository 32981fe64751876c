use crate::error::{Error, Result};
use crate::exactnum::{self, Natural};
use crate::repr::Representation;

/// Which part to split and by which divisor of it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GammaChoice {
    pub part_index: usize,
    pub d: Natural,
}

impl GammaChoice {
    pub fn new(part_index: usize, d: impl Into<Natural>) -> Self {
        GammaChoice {
            part_index,
            d: d.into(),
        }
    }
}

/// The two parts `γ_d` puts in place of `u`: `u + d` and `(u/d)(u + d)`.
pub fn gamma_parts(u: &Natural, d: &Natural) -> Result<(Natural, Natural)> {
    if !d.divides(u) {
        return Err(Error::NonDivisor {
            u: u.clone(),
            d: d.clone(),
        });
    }
    let grown = u + d;
    let tail = &(u / d) * &grown;
    Ok((grown, tail))
}

/// Replaces one part `u` by `u + d` and `(u/d)(u + d)`, which keeps the sum
/// since `1/u = 1/(u+d) + d/(u(u+d))`.
pub fn gamma_split(rep: &Representation, choice: &GammaChoice) -> Result<Representation> {
    let denoms = rep.denoms();
    let u = denoms.get(choice.part_index).ok_or(Error::IndexOutOfRange {
        index: choice.part_index,
        len: denoms.len(),
    })?;
    let (grown, tail) = gamma_parts(u, &choice.d)?;
    let mut out = Vec::with_capacity(denoms.len() + 1);
    out.extend(denoms[..choice.part_index].iter().cloned());
    out.extend(denoms[choice.part_index + 1..].iter().cloned());
    out.push(grown);
    out.push(tail);
    out.sort();
    Ok(Representation::from_parts_unchecked(rep.target().clone(), out))
}

/// One child per divisor of the selected part, in ascending order of `d`.
pub fn gamma_children(rep: &Representation, part_index: usize) -> Result<Vec<Representation>> {
    let u = rep.denoms().get(part_index).ok_or(Error::IndexOutOfRange {
        index: part_index,
        len: rep.len(),
    })?;
    exactnum::divisors(u)?
        .into_iter()
        .map(|d| gamma_split(rep, &GammaChoice { part_index, d }))
        .collect()
}
