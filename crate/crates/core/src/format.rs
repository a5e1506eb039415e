//! Shared helpers for the line-oriented text formats.
//!
//! Every format is UTF-8 text with `\n` line endings. Vertices are written
//! 1-based; the library API is 0-based throughout.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Separator line between sections of composite files.
pub const SECTION_SEPARATOR: &str = "---";

/// Parses an integer `p` or a rational `p/q` with `q > 0`.
pub fn parse_rational(token: &str, line: usize) -> Result<BigRational> {
    let (num, den) = match token.split_once('/') {
        Some((p, q)) => (p, Some(q)),
        None => (token, None),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::parse(line, format!("bad numerator in `{token}`")))?;
    let den: BigInt = match den {
        Some(q) => q
            .parse()
            .map_err(|_| Error::parse(line, format!("bad denominator in `{token}`")))?,
        None => BigInt::from(1),
    };
    if den.is_zero() || den.is_negative() {
        return Err(Error::parse(line, format!("denominator must be positive in `{token}`")));
    }
    Ok(BigRational::new(num, den))
}

pub fn parse_usize(token: &str, line: usize) -> Result<usize> {
    token
        .parse()
        .map_err(|_| Error::parse(line, format!("expected a non-negative integer, got `{token}`")))
}

/// Non-empty lines with their 1-based line numbers. Trailing whitespace and
/// blank lines are ignored.
pub(crate) fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

/// Splits a composite file on `---` lines.
pub fn split_sections(text: &str) -> Vec<String> {
    let mut sections = vec![String::new()];
    for line in text.lines() {
        if line.trim() == SECTION_SEPARATOR {
            sections.push(String::new());
        } else {
            let last = sections.last_mut().expect("at least one section");
            last.push_str(line);
            last.push('\n');
        }
    }
    sections
}

pub(crate) fn join_sections<I, S>(sections: I) -> String
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut out = String::new();
    for (i, s) in sections.into_iter().enumerate() {
        if i > 0 {
            out.push_str(SECTION_SEPARATOR);
            out.push('\n');
        }
        out.push_str(s.as_ref());
    }
    out
}
