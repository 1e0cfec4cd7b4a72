use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which finite group to build.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupSpec {
    Cyclic(u64),
    Q8,
    Milnor { a: u64, b: u64, c: u64 },
    Alternating(usize),
    Symmetric(usize),
    Product(Box<GroupSpec>, Box<GroupSpec>),
}

impl GroupSpec {
    pub fn milnor(a: u64, b: u64, c: u64) -> Self {
        GroupSpec::Milnor { a, b, c }
    }

    pub fn product(left: GroupSpec, right: GroupSpec) -> Self {
        GroupSpec::Product(Box::new(left), Box::new(right))
    }

    /// Group order, or `None` on `u64` overflow.
    pub fn order(&self) -> Option<u64> {
        match self {
            GroupSpec::Cyclic(k) => Some(*k),
            GroupSpec::Q8 => Some(8),
            GroupSpec::Milnor { a, b, c } => 8u64.checked_mul(*a)?.checked_mul(*b)?.checked_mul(*c),
            GroupSpec::Alternating(n) => {
                let f = factorial(*n)?;
                Some(if *n >= 2 { f / 2 } else { f })
            }
            GroupSpec::Symmetric(n) => factorial(*n),
            GroupSpec::Product(g, h) => g.order()?.checked_mul(h.order()?),
        }
    }

    /// Checks the parameter constraints of every variant. Milnor parameters must
    /// be pairwise coprime odd integers with `a >= 3` and `b > c >= 1` unless
    /// `allow_nonstandard` is set, in which case only positivity is required.
    pub fn validate(&self, allow_nonstandard: bool) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameters(msg));
        match self {
            GroupSpec::Cyclic(0) => bad("cyclic order k must be at least 1".into()),
            GroupSpec::Cyclic(_) | GroupSpec::Q8 => Ok(()),
            GroupSpec::Alternating(0) | GroupSpec::Symmetric(0) => {
                bad("permutation degree n must be at least 1".into())
            }
            GroupSpec::Alternating(n) | GroupSpec::Symmetric(n) if *n > 255 => {
                bad(format!("permutation degree {n} is too large"))
            }
            GroupSpec::Alternating(_) | GroupSpec::Symmetric(_) => Ok(()),
            GroupSpec::Milnor { a, b, c } => {
                for (name, v) in [("a", a), ("b", b), ("c", c)] {
                    if *v == 0 {
                        return bad(format!("{name} must be positive"));
                    }
                }
                if allow_nonstandard {
                    return Ok(());
                }
                for (name, v) in [("a", a), ("b", b), ("c", c)] {
                    if v % 2 == 0 {
                        return bad(format!("{name} must be odd"));
                    }
                }
                for (x, y, nx, ny) in [(a, b, "a", "b"), (a, c, "a", "c"), (b, c, "b", "c")] {
                    if x.gcd(y) != 1 {
                        return bad(format!("{nx} and {ny} must be coprime (gcd {})", x.gcd(y)));
                    }
                }
                if *a < 3 {
                    return bad("a must be at least 3".into());
                }
                if b <= c {
                    return bad("b must be greater than c".into());
                }
                Ok(())
            }
            GroupSpec::Product(g, h) => {
                g.validate(allow_nonstandard)?;
                h.validate(allow_nonstandard)
            }
        }
    }
}

fn factorial(n: usize) -> Option<u64> {
    (1..=n as u64).try_fold(1u64, |acc, k| acc.checked_mul(k))
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(k) => write!(f, "cyclic({k})"),
            GroupSpec::Q8 => write!(f, "q8"),
            GroupSpec::Milnor { a, b, c } => write!(f, "milnor({a},{b},{c})"),
            GroupSpec::Alternating(n) => write!(f, "alt({n})"),
            GroupSpec::Symmetric(n) => write!(f, "sym({n})"),
            GroupSpec::Product(g, h) => write!(f, "product({g},{h})"),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Parses `milnor(3,5,1)`, `alt(7)`, `sym(5)`, `cyclic(12)`, `q8`,
    /// `product(g,h)`; case-insensitive, whitespace ignored.
    fn from_str(s: &str) -> Result<Self> {
        let cleaned: String = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .flat_map(char::to_lowercase)
            .collect();
        let mut parser = Parser {
            src: &cleaned,
            pos: 0,
            original: s,
        };
        let spec = parser.group()?;
        if parser.pos != cleaned.len() {
            return Err(parser.fail("trailing input"));
        }
        Ok(spec)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    original: &'a str,
}

impl Parser<'_> {
    fn fail(&self, reason: &str) -> Error {
        Error::parse(
            "group spec",
            self.original,
            format!("{reason} at offset {}", self.pos),
        )
    }

    fn ident(&mut self) -> &str {
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| !c.is_ascii_alphanumeric() && c != '_')
            .unwrap_or(rest.len());
        self.pos += len;
        &rest[..len]
    }

    fn expect(&mut self, ch: char) -> Result<()> {
        if self.src[self.pos..].starts_with(ch) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.fail(&format!("expected '{ch}'")))
        }
    }

    fn number(&mut self) -> Result<u64> {
        let rest = &self.src[self.pos..];
        let len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        if len == 0 {
            return Err(self.fail("expected a number"));
        }
        self.pos += len;
        rest[..len].parse().map_err(|_| self.fail("number out of range"))
    }

    fn numbers(&mut self, count: usize) -> Result<Vec<u64>> {
        self.expect('(')?;
        let mut out = Vec::with_capacity(count);
        for i in 0..count {
            if i > 0 {
                self.expect(',')?;
            }
            out.push(self.number()?);
        }
        self.expect(')')?;
        Ok(out)
    }

    fn group(&mut self) -> Result<GroupSpec> {
        let start = self.pos;
        let name = self.ident().to_string();
        let spec = match name.as_str() {
            "q8" | "quaternion" => GroupSpec::Q8,
            "trivial" => GroupSpec::Cyclic(1),
            "cyclic" | "z" => GroupSpec::Cyclic(self.numbers(1)?[0]),
            "alt" | "alternating" | "a" => GroupSpec::Alternating(self.numbers(1)?[0] as usize),
            "sym" | "symmetric" | "s" => GroupSpec::Symmetric(self.numbers(1)?[0] as usize),
            "milnor" | "q" => {
                let v = self.numbers(3)?;
                GroupSpec::milnor(v[0], v[1], v[2])
            }
            "product" => {
                self.expect('(')?;
                let g = self.group()?;
                self.expect(',')?;
                let h = self.group()?;
                self.expect(')')?;
                GroupSpec::product(g, h)
            }
            _ => {
                self.pos = start;
                return Err(self.fail(&format!("unknown group {name:?}")));
            }
        };
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        for s in [
            "milnor(3,5,1)",
            "alt(7)",
            "sym(5)",
            "cyclic(12)",
            "q8",
            "product(milnor(3,5,1),alt(7))",
        ] {
            let spec: GroupSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
    }

    #[test]
    fn parse_is_lenient_about_case_and_space() {
        let spec: GroupSpec = " Product( MILNOR(3, 5, 1) , Alt( 7 ) ) ".parse().unwrap();
        assert_eq!(
            spec,
            GroupSpec::product(GroupSpec::milnor(3, 5, 1), GroupSpec::Alternating(7))
        );
    }

    #[test]
    fn parse_errors() {
        assert!("milnor(3,5)".parse::<GroupSpec>().is_err());
        assert!("foo(1)".parse::<GroupSpec>().is_err());
        assert!("alt(7))".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn milnor_constraints() {
        let err = GroupSpec::milnor(3, 4, 1).validate(false).unwrap_err();
        assert!(err.to_string().contains("b must be odd"), "{err}");
        let err = GroupSpec::milnor(3, 9, 1).validate(false).unwrap_err();
        assert!(err.to_string().contains("coprime"), "{err}");
        let err = GroupSpec::milnor(1, 5, 3).validate(false).unwrap_err();
        assert!(err.to_string().contains("at least 3"), "{err}");
        let err = GroupSpec::milnor(3, 1, 5).validate(false).unwrap_err();
        assert!(err.to_string().contains("greater than c"), "{err}");
        assert!(GroupSpec::milnor(3, 5, 1).validate(false).is_ok());
        assert!(GroupSpec::milnor(1, 1, 1).validate(true).is_ok());
        assert!(GroupSpec::milnor(0, 1, 1).validate(true).is_err());
    }

    #[test]
    fn orders() {
        assert_eq!(GroupSpec::milnor(3, 5, 1).order(), Some(120));
        assert_eq!(GroupSpec::Alternating(5).order(), Some(60));
        assert_eq!(GroupSpec::Alternating(1).order(), Some(1));
        assert_eq!(
            GroupSpec::product(GroupSpec::milnor(3, 5, 1), GroupSpec::Alternating(7)).order(),
            Some(302_400)
        );
    }
}
