//! Symbolic arithmetic sequences shared by the exact engine and the numeric
//! layers.
//!
//! Every supported sequence is a finite integer combination of
//! `log^i(n) * d^(k)(n)`, where `d^(k) = 1 * log^k` is the k-th divisor
//! derivative. [`SeqDescriptor::expand`] produces that canonical form.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::combinatorics::binom;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SeqDescriptor {
    /// `d^(mu,nu)(n) = sum_{ab=n} log^mu(a) log^nu(b)`.
    DivisorDeriv(u32, u32),
    /// `alpha(n) = log(n) d^(1)(n) - d^(2)(n)`, identical to `d^(1,1)`.
    Alpha,
    /// `n -> log^j(n) * inner(n)`.
    LogWeighted(u32, Box<SeqDescriptor>),
}

/// One summand `coeff * log^log_power(n) * d^(order)(n)` of an expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogDivisorTerm {
    pub log_power: u32,
    pub order: u32,
    pub coeff: BigInt,
}

impl SeqDescriptor {
    pub fn d() -> Self {
        SeqDescriptor::DivisorDeriv(0, 0)
    }

    pub fn d_deriv(mu: u32) -> Self {
        SeqDescriptor::DivisorDeriv(mu, 0)
    }

    pub fn alpha() -> Self {
        SeqDescriptor::Alpha
    }

    pub fn log_weighted(j: u32, inner: SeqDescriptor) -> Self {
        SeqDescriptor::LogWeighted(j, Box::new(inner))
    }

    /// Total power of `log` carried by the sequence: `a(n) << log^w(n) d(n)`.
    pub fn weight(&self) -> u32 {
        match self {
            SeqDescriptor::DivisorDeriv(mu, nu) => mu + nu,
            SeqDescriptor::Alpha => 2,
            SeqDescriptor::LogWeighted(j, inner) => j + inner.weight(),
        }
    }

    /// `Some((mu, nu))` for a bare divisor derivative, with `Alpha` mapped to
    /// `(1, 1)`.
    pub fn as_divisor_deriv(&self) -> Option<(u32, u32)> {
        match self {
            SeqDescriptor::DivisorDeriv(mu, nu) => Some((*mu, *nu)),
            SeqDescriptor::Alpha => Some((1, 1)),
            SeqDescriptor::LogWeighted(..) => None,
        }
    }

    /// Canonical expansion into `log^i * d^(k)` terms, merged and without
    /// zero coefficients, ordered by `(log_power, order)`.
    ///
    /// `d^(mu,nu)(n) = sum_r binom(nu,r) (-1)^r log^(nu-r)(n) d^(mu+r)(n)`,
    /// obtained by writing `log b = log n - log a`; for `(1,1)` this is the
    /// defining identity of `alpha`.
    pub fn expand(&self) -> Vec<LogDivisorTerm> {
        let mut acc: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        self.expand_into(0, &BigInt::one(), &mut acc);
        acc.into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((log_power, order), coeff)| LogDivisorTerm { log_power, order, coeff })
            .collect()
    }

    fn expand_into(&self, shift: u32, scale: &BigInt, acc: &mut BTreeMap<(u32, u32), BigInt>) {
        match self {
            SeqDescriptor::DivisorDeriv(mu, nu) => {
                // d^(mu,nu) is symmetric; expand along the smaller index.
                let (big, small) = if mu >= nu { (*mu, *nu) } else { (*nu, *mu) };
                for r in 0..=small {
                    let sign = if r % 2 == 0 { 1 } else { -1 };
                    let c = binom(small as u64, r as i64) * sign * scale;
                    *acc.entry((shift + small - r, big + r)).or_insert_with(BigInt::zero) += c;
                }
            }
            SeqDescriptor::Alpha => {
                *acc.entry((shift + 1, 1)).or_insert_with(BigInt::zero) += scale;
                *acc.entry((shift, 2)).or_insert_with(BigInt::zero) -= scale;
            }
            SeqDescriptor::LogWeighted(j, inner) => inner.expand_into(shift + j, scale, acc),
        }
    }
}

impl fmt::Display for SeqDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqDescriptor::DivisorDeriv(0, 0) => write!(f, "d"),
            SeqDescriptor::DivisorDeriv(mu, 0) => write!(f, "d^({mu})"),
            SeqDescriptor::DivisorDeriv(mu, nu) => write!(f, "d^({mu},{nu})"),
            SeqDescriptor::Alpha => write!(f, "alpha"),
            SeqDescriptor::LogWeighted(j, inner) => write!(f, "log^{j}*{inner}"),
        }
    }
}

#[derive(Debug, thiserror::Error)]
#[error("unrecognized sequence descriptor `{0}`")]
pub struct ParseSeqError(pub String);

impl FromStr for SeqDescriptor {
    type Err = ParseSeqError;

    /// Parses the [`Display`](fmt::Display) form: `d`, `d^(2)`, `d^(1,2)`,
    /// `alpha`, `log^3*d^(1)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let err = || ParseSeqError(s.to_string());
        if s == "d" {
            return Ok(Self::d());
        }
        if s == "alpha" {
            return Ok(Self::Alpha);
        }
        if let Some(rest) = s.strip_prefix("log^") {
            let (j, inner) = rest.split_once('*').ok_or_else(err)?;
            let j = j.parse().map_err(|_| err())?;
            return Ok(Self::log_weighted(j, inner.parse()?));
        }
        if let Some(args) = s.strip_prefix("d^(").and_then(|r| r.strip_suffix(')')) {
            let mut parts = args.split(',').map(|p| p.trim().parse::<u32>());
            let mu = parts.next().ok_or_else(err)?.map_err(|_| err())?;
            let nu = match parts.next() {
                Some(p) => p.map_err(|_| err())?,
                None => 0,
            };
            if parts.next().is_some() {
                return Err(err());
            }
            return Ok(Self::DivisorDeriv(mu, nu));
        }
        Err(err())
    }
}
