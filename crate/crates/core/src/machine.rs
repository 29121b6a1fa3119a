//! Finite, step-bounded prefix-free machines.
//!
//! Machines are explicit tables: every program either halts within the
//! declared step bound with a declared output, or diverges. The halting
//! domain is therefore decidable and every truncated halting probability is
//! an exact rational, which is what the downstream inequality checks need.
//! There is no universal machine and no simulation of arbitrary code.

use num_traits::{One, Zero};

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::rational::{pow_nat, ratio, Rational};
use crate::real::LeftCEReal;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Behavior {
    /// Halts within the step bound, producing `output`.
    Halt {
        output: BitString,
    },
    Diverge,
}

#[derive(Clone, Debug)]
pub struct Program {
    pub bits: BitString,
    pub behavior: Behavior,
}

/// Finite machine table with a prefix-free halting domain.
#[derive(Clone, Debug)]
pub struct PrefixFreeMachine {
    pub id: String,
    pub step_bound: u64,
    programs: Vec<Program>,
}

impl PrefixFreeMachine {
    /// Validates prefix-freeness of the halting-program set on
    /// construction; violations are always rejected.
    pub fn new(id: &str, step_bound: u64, programs: Vec<Program>) -> Result<Self> {
        let halting: Vec<&BitString> = programs
            .iter()
            .filter(|p| matches!(p.behavior, Behavior::Halt { .. }))
            .map(|p| &p.bits)
            .collect();
        for (i, a) in halting.iter().enumerate() {
            for b in &halting[i + 1..] {
                let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
                if long.prefix(short.len()) == **short {
                    return Err(Error::NotPrefixFree(short.to_string(), long.to_string()));
                }
            }
        }
        Ok(PrefixFreeMachine {
            id: id.to_string(),
            step_bound,
            programs,
        })
    }

    pub fn programs(&self) -> &[Program] {
        &self.programs
    }

    fn halting(&self) -> impl Iterator<Item = &Program> {
        self.programs
            .iter()
            .filter(|p| matches!(p.behavior, Behavior::Halt { .. }))
    }

    /// Truncated halting probability `Σ 2^{-|p|/T}` over the declared
    /// halting programs, for `T = 1/j` with `j` a positive natural (so
    /// every term is an exact power of two).
    pub fn omega_t(&self, t: &Rational) -> Result<Rational> {
        if !(t > &Rational::zero() && t <= &Rational::one() && t.numer().is_one()) {
            return Err(Error::UnsupportedT(format!(
                "T = {} is not the reciprocal of a positive natural",
                t
            )));
        }
        let inv_t: u64 = t
            .denom()
            .try_into()
            .map_err(|_| Error::UnsupportedT(format!("1/T = {} too large", t.denom())))?;
        let mut total = Rational::zero();
        for p in self.halting() {
            let exp = (p.bits.len() as u64)
                .checked_mul(inv_t)
                .ok_or_else(|| Error::UnsupportedT("exponent overflow".into()))?;
            total += pow_nat(&ratio(1, 2), exp as u32);
        }
        Ok(total)
    }

    /// The halting probability (`T = 1`) as a left-c.e. real whose stages
    /// are the partial sums in table enumeration order.
    pub fn omega_real(&self) -> Result<LeftCEReal> {
        let terms: Vec<Rational> = self
            .halting()
            .map(|p| pow_nat(&ratio(1, 2), p.bits.len() as u32))
            .collect();
        LeftCEReal::from_partial_sums(&format!("omega({})", self.id), terms)
    }

    /// `n`-fold interleaving transform of the machine's halting
    /// probability; the limit stays exactly known.
    pub fn omega_tower(&self, n: u32, coerce_bits: u64) -> Result<LeftCEReal> {
        let mut real = self.omega_real()?;
        for _ in 0..n {
            real = real.interleave_transform(coerce_bits)?;
        }
        Ok(real)
    }

    /// Minimum length of a declared-halting program producing `target`, or
    /// `None`. Report-only: nothing is asserted against it.
    pub fn complexity_profile(&self, target: &BitString) -> Option<usize> {
        self.halting()
            .filter(|p| matches!(&p.behavior, Behavior::Halt { output } if output == target))
            .map(|p| p.bits.len())
            .min()
    }
}
