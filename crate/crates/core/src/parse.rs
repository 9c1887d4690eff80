//! Text formats accepted on the command line.
//!
//! - index lists: `1,2,4`, strictly increasing positive integers;
//! - partitions: `3,1,1`, nonincreasing nonnegative integers;
//! - partition blocks: `2:3,1:1`, pairs `max_parts:max_part`;
//! - rank profiles: `1,1,2,1,1`, nonnegative integers starting with 1;
//! - base descriptions: `point`, `projective:N`, `grassmannian:N,D`,
//!   `symbolic`, or an inline rank profile.

use std::fmt;

use num_bigint::BigUint;

use crate::chowrank::{FlagSpec, RankProfile};
use crate::error::{Error, Result};
use crate::partitions::PartitionConstraint;
use crate::schur::Partition;

fn parse_list<T: std::str::FromStr>(input: &str, what: &str) -> Result<Vec<T>> {
    let trimmed = input.trim();
    if trimmed.is_empty() {
        return Err(Error::Parse(format!("empty {what}")));
    }
    trimmed
        .split(',')
        .map(|item| {
            let item = item.trim();
            item.parse::<T>()
                .map_err(|_| Error::Parse(format!("{what}: {item:?} is not a nonnegative integer")))
        })
        .collect()
}

/// Comma-separated, strictly increasing, positive indices. Duplicates and
/// disorder are errors rather than being sorted away.
pub fn parse_indices(input: &str) -> Result<Vec<u32>> {
    let values: Vec<u32> = parse_list(input, "index list")?;
    if values[0] == 0 {
        return Err(Error::Parse("indices start at 1".into()));
    }
    for pair in values.windows(2) {
        if pair[0] == pair[1] {
            return Err(Error::Parse(format!("duplicate index {}", pair[0])));
        }
        if pair[0] > pair[1] {
            return Err(Error::Parse(format!(
                "indices out of order: {} before {}",
                pair[0], pair[1]
            )));
        }
    }
    Ok(values)
}

/// A flag spec from a degree and an index list.
pub fn parse_flag_spec(degree: u32, indices: &str) -> Result<FlagSpec> {
    FlagSpec::new(degree, parse_indices(indices)?)
}

/// A partition such as `2,1` or `3,3,0`.
pub fn parse_partition(input: &str) -> Result<Partition> {
    let parts: Vec<u32> = parse_list(input, "partition")?;
    Partition::new(parts)
}

/// Partition blocks `m:A` separated by commas, e.g. `2:3,1:1`: at most `m`
/// parts, each at most `A`.
pub fn parse_blocks(input: &str) -> Result<Vec<PartitionConstraint>> {
    let trimmed = input.trim();
    if trimmed.is_empty() {
        return Err(Error::Parse("empty block list".into()));
    }
    trimmed
        .split(',')
        .map(|item| {
            let (m, a) = item
                .trim()
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("block {item:?} is not of the form m:A")))?;
            let parse = |x: &str| {
                x.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("block {item:?}: {x:?} is not a nonnegative integer")))
            };
            PartitionConstraint::new(parse(m)?, parse(a)?)
        })
        .collect()
}

/// A rank profile such as `1,1,2,1,1`.
pub fn parse_rank_profile(input: &str) -> Result<RankProfile> {
    let ranks: Vec<BigUint> = parse_list(input, "rank profile")?;
    if ranks[0] != BigUint::from(1u32) {
        return Err(Error::Parse(format!(
            "rank profile must start with 1 in codimension 0, got {}",
            ranks[0]
        )));
    }
    RankProfile::from_ranks(ranks)
}

/// A base variety given by name or by its ranks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseSpec {
    Point,
    /// Projective space of lines in an `N`-dimensional space, `P^{N-1}`.
    Projective(u32),
    /// Split Grassmannian of `d`-planes in an `n`-space.
    Grassmannian { n: u32, d: u32 },
    /// Ranks given inline.
    Inline(RankProfile),
    /// No ranks: report the coefficient table only.
    Symbolic,
}

impl BaseSpec {
    /// The rank profile, or `None` for [`BaseSpec::Symbolic`].
    pub fn profile(&self) -> Result<Option<RankProfile>> {
        Ok(match self {
            BaseSpec::Point => Some(RankProfile::point()),
            BaseSpec::Projective(n) => Some(RankProfile::projective(n - 1)),
            BaseSpec::Grassmannian { n, d } => Some(RankProfile::grassmannian(*n, *d)?),
            BaseSpec::Inline(p) => Some(p.clone()),
            BaseSpec::Symbolic => None,
        })
    }
}

impl fmt::Display for BaseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseSpec::Point => f.write_str("point"),
            BaseSpec::Projective(n) => write!(f, "projective:{n}"),
            BaseSpec::Grassmannian { n, d } => write!(f, "grassmannian:{n},{d}"),
            BaseSpec::Inline(p) => write!(f, "{p}"),
            BaseSpec::Symbolic => f.write_str("symbolic"),
        }
    }
}

/// Largest `N` accepted in `projective:N` and `grassmannian:N,D`.
pub const MAX_BASE_DEGREE: u32 = 4096;

/// Largest dimension `D(N - D)` accepted in `grassmannian:N,D`.
pub const MAX_GRASSMANNIAN_DIMENSION: u64 = 2500;

pub fn parse_base(input: &str) -> Result<BaseSpec> {
    let input = input.trim();
    match input {
        "point" => return Ok(BaseSpec::Point),
        "symbolic" => return Ok(BaseSpec::Symbolic),
        _ => {}
    }
    if let Some(rest) = input.strip_prefix("projective:") {
        let n: u32 = rest
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("projective:{rest:?}: expected a positive integer")))?;
        if n == 0 || n > MAX_BASE_DEGREE {
            return Err(Error::Parse(format!("projective:N needs 1 <= N <= {MAX_BASE_DEGREE}")));
        }
        return Ok(BaseSpec::Projective(n));
    }
    if let Some(rest) = input.strip_prefix("grassmannian:") {
        let values: Vec<u32> = parse_list(rest, "grassmannian parameters")?;
        let [n, d] = values[..] else {
            return Err(Error::Parse("grassmannian:N,D takes exactly two integers".into()));
        };
        if d == 0 || d > n || n > MAX_BASE_DEGREE {
            return Err(Error::Parse(format!("grassmannian:{n},{d} needs 1 <= D <= N <= {MAX_BASE_DEGREE}")));
        }
        if u64::from(d) * u64::from(n - d) > MAX_GRASSMANNIAN_DIMENSION {
            return Err(Error::Parse(format!(
                "grassmannian:{n},{d} has dimension above {MAX_GRASSMANNIAN_DIMENSION}"
            )));
        }
        return Ok(BaseSpec::Grassmannian { n, d });
    }
    if input.starts_with(|c: char| c.is_ascii_digit()) {
        return parse_rank_profile(input).map(BaseSpec::Inline);
    }
    Err(Error::Parse(format!(
        "unknown base {input:?}; expected point, projective:N, grassmannian:N,D, symbolic or a rank list"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn indices() {
        assert_eq!(parse_indices("1,2,4").unwrap(), vec![1, 2, 4]);
        assert_eq!(parse_indices(" 3 , 5 ").unwrap(), vec![3, 5]);
        assert!(parse_indices("").is_err());
        assert!(parse_indices("2,2").unwrap_err().to_string().contains("duplicate"));
        assert!(parse_indices("3,1").unwrap_err().to_string().contains("order"));
        assert!(parse_indices("0,1").is_err());
        assert!(parse_indices("1,,2").is_err());
        assert!(parse_indices("1,-2").is_err());
        assert!(parse_indices("99999999999").is_err());
        assert!(parse_flag_spec(3, "1,4").is_err());
        assert_eq!(parse_flag_spec(4, "1,2").unwrap().indices(), &[1, 2]);
    }

    #[test]
    fn bases() {
        assert_eq!(parse_base("point").unwrap(), BaseSpec::Point);
        assert_eq!(parse_base("symbolic").unwrap(), BaseSpec::Symbolic);
        let p = parse_base("projective:3").unwrap();
        assert_eq!(p.profile().unwrap().unwrap().to_string(), "1,1,1");
        let g = parse_base("grassmannian:4,2").unwrap();
        assert_eq!(g.profile().unwrap().unwrap().to_string(), "1,1,2,1,1");
        let inline = parse_base("1,2,1").unwrap();
        assert_eq!(inline.to_string(), "1,2,1");
        assert!(parse_base("projective:0").is_err());
        assert!(parse_base("grassmannian:2,3").is_err());
        assert!(parse_base("grassmannian:4").is_err());
        assert!(parse_base("grassmannian:100,50").is_ok());
        assert!(parse_base("grassmannian:102,51").is_err());
        assert!(parse_base("2,1").is_err());
        assert!(parse_base("torus").is_err());
    }

    #[test]
    fn partitions() {
        assert_eq!(parse_partition("2,1").unwrap().parts(), &[2, 1]);
        assert!(parse_partition("1,2").is_err());
    }

    #[test]
    fn blocks() {
        let b = parse_blocks("2:3, 1:1").unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!((b[0].max_parts(), b[0].max_part()), (2, 3));
        assert!(parse_blocks("0:3").is_err());
        assert!(parse_blocks("2").is_err());
        assert!(parse_blocks("2:x").is_err());
    }

    proptest! {
        #[test]
        fn increasing_lists_round_trip(mut v in prop::collection::btree_set(1u32..1000, 1..8)) {
            let list: Vec<u32> = std::mem::take(&mut v).into_iter().collect();
            let text = list.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
            prop_assert_eq!(parse_indices(&text).unwrap(), list);
        }

        #[test]
        fn arbitrary_text_never_panics(s in "\\PC*") {
            let _ = parse_indices(&s);
            let _ = parse_base(&s);
            let _ = parse_partition(&s);
            let _ = parse_blocks(&s);
        }
    }
}
