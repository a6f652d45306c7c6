//! Text form of representations on the command line.
//!
//! ```text
//! 2,1            irrep rho^(2,1)
//! 2,1x2,1        tensor product (any number of factors)
//! left:3         left regular representation of S_3
//! right:3        right regular representation of S_3
//! amp:2:2,1      I_2 ⊗ rho^(2,1)
//! lift:4:2,1     rho^(2,1) ⊗ I_4
//! conj:2,1x3     entrywise conjugate
//! ```
//!
//! Prefixes apply to everything after them.

use kronwit_core::{GroupRep, Partition, RepContext};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepSpec {
    Irrep(Partition),
    Tensor(Vec<RepSpec>),
    Left(usize),
    Right(usize),
    Amplified(usize, Box<RepSpec>),
    Lift(usize, Box<RepSpec>),
    Conjugate(Box<RepSpec>),
}

fn count(text: &str, what: &str) -> Result<usize, CliError> {
    match text.parse::<usize>() {
        Ok(k) if k > 0 => Ok(k),
        _ => Err(CliError::Usage(format!("{what} must be a positive integer, got {text:?}"))),
    }
}

pub fn parse_partition(text: &str) -> Result<Partition, CliError> {
    text.parse::<Partition>()
        .map_err(|e| CliError::Usage(format!("bad partition {text:?}: {}", e.message())))
}

impl std::str::FromStr for RepSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("conj:") {
            return Ok(RepSpec::Conjugate(Box::new(rest.parse()?)));
        }
        for (prefix, amplified) in [("amp:", true), ("lift:", false)] {
            if let Some(rest) = s.strip_prefix(prefix) {
                let (k, inner) = rest
                    .split_once(':')
                    .ok_or_else(|| CliError::Usage(format!("expected {prefix}<count>:<rep>, got {s:?}")))?;
                let k = count(k, "copy count")?;
                let inner = Box::new(inner.parse()?);
                return Ok(if amplified { RepSpec::Amplified(k, inner) } else { RepSpec::Lift(k, inner) });
            }
        }
        if let Some(n) = s.strip_prefix("left:") {
            return Ok(RepSpec::Left(count(n, "degree")?));
        }
        if let Some(n) = s.strip_prefix("right:") {
            return Ok(RepSpec::Right(count(n, "degree")?));
        }
        if s.contains('x') {
            let factors = s.split('x').map(str::parse).collect::<Result<Vec<RepSpec>, _>>()?;
            return Ok(RepSpec::Tensor(factors));
        }
        Ok(RepSpec::Irrep(parse_partition(s)?))
    }
}

impl RepSpec {
    /// Degree `n` of the acting group; factors must agree.
    pub fn degree(&self) -> Result<usize, CliError> {
        match self {
            RepSpec::Irrep(p) => Ok(p.n()),
            RepSpec::Left(n) | RepSpec::Right(n) => Ok(*n),
            RepSpec::Amplified(_, r) | RepSpec::Lift(_, r) | RepSpec::Conjugate(r) => r.degree(),
            RepSpec::Tensor(fs) => {
                let n = fs[0].degree()?;
                for f in &fs[1..] {
                    if f.degree()? != n {
                        return Err(CliError::Usage(format!("tensor factors act on different S_n ({} vs {n})", f.degree()?)));
                    }
                }
                Ok(n)
            }
        }
    }

    pub fn build(&self, ctx: &RepContext) -> Result<GroupRep, CliError> {
        Ok(match self {
            RepSpec::Irrep(p) => ctx.irrep(p)?.clone(),
            RepSpec::Tensor(fs) => {
                let mut acc = fs[0].build(ctx)?;
                for f in &fs[1..] {
                    acc = GroupRep::tensor(&acc, &f.build(ctx)?)?;
                }
                acc
            }
            RepSpec::Left(_) => ctx.regular_representations()?.0,
            RepSpec::Right(_) => ctx.regular_representations()?.1,
            RepSpec::Amplified(k, r) => GroupRep::amplified(*k, &r.build(ctx)?),
            RepSpec::Lift(k, r) => GroupRep::lift_with_identity(&r.build(ctx)?, *k),
            RepSpec::Conjugate(r) => GroupRep::conjugate(&r.build(ctx)?),
        })
    }
}
