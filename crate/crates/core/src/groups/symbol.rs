use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::arith::{exact_divisors, gcd, is_exact_divisor};

use super::GroupError;

/// A Conway–Norton symbol `n|h+e,f,…` with its divisor set spelled out.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MoonshineSymbol {
    pub n: u64,
    pub h: u64,
    pub divisors: BTreeSet<u64>,
}

impl MoonshineSymbol {
    pub fn new(n: u64, h: u64, divisors: BTreeSet<u64>) -> Result<Self, GroupError> {
        if n == 0 || h == 0 || !n.is_multiple_of(h) || 24 % h != 0 {
            return Err(GroupError::Parse {
                pos: 0,
                msg: format!("({n}|{h}) needs h | n and h | 24"),
            });
        }
        let m = n / h;
        if let Some(&e) = divisors.iter().find(|&&e| e == 1 || !is_exact_divisor(e, m)) {
            return Err(GroupError::Parse {
                pos: 0,
                msg: format!("{e} is not an exact divisor of {m} other than 1"),
            });
        }
        Ok(MoonshineSymbol { n, h, divisors })
    }

    /// `n/h`.
    pub fn m(&self) -> u64 {
        self.n / self.h
    }

    pub fn big_n(&self) -> u64 {
        self.n * self.h
    }

    pub fn is_plus(&self) -> bool {
        let all: BTreeSet<u64> = exact_divisors(self.m()).into_iter().collect();
        !all.is_empty() && self.divisors == all
    }
}

impl fmt::Display for MoonshineSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.n)?;
        if self.h != 1 {
            write!(f, "|{}", self.h)?;
        }
        if self.divisors.is_empty() {
            if self.m() > 1 {
                write!(f, "-")?;
            }
        } else if self.is_plus() {
            write!(f, "+")?;
        } else {
            let list: Vec<String> = self.divisors.iter().map(u64::to_string).collect();
            write!(f, "+{}", list.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Debug for MoonshineSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn err(&self, msg: impl Into<String>) -> GroupError {
        GroupError::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.s.get(self.pos) == Some(&c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn number(&mut self) -> Result<u64, GroupError> {
        let start = self.pos;
        while self.s.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| GroupError::Parse {
                pos: start,
                msg: "number out of range".into(),
            })
    }
}

pub fn parse_symbol(text: &str) -> Result<MoonshineSymbol, GroupError> {
    let mut c = Cursor {
        s: text.trim().as_bytes(),
        pos: 0,
    };
    let n = c.number()?;
    let h = if c.eat(b'|') { c.number()? } else { 1 };
    if h == 0 || n % h != 0 {
        return Err(c.err(format!("{h} does not divide {n}")));
    }
    if 24 % h != 0 {
        return Err(c.err(format!("{h} does not divide 24")));
    }
    let m = n / h;
    let mut divisors = BTreeSet::new();
    if c.eat(b'+') {
        if c.pos == c.s.len() {
            divisors.extend(exact_divisors(m));
        } else {
            loop {
                let at = c.pos;
                let e = c.number()?;
                if !is_exact_divisor(e, m) {
                    return Err(GroupError::Parse {
                        pos: at,
                        msg: format!("{e} is not an exact divisor of {m}"),
                    });
                }
                if e != 1 {
                    divisors.insert(e);
                }
                if !c.eat(b',') {
                    break;
                }
            }
        }
    } else {
        c.eat(b'-');
    }
    if c.pos != c.s.len() {
        return Err(c.err("unexpected trailing input"));
    }
    Ok(MoonshineSymbol { n, h, divisors })
}

impl FromStr for MoonshineSymbol {
    type Err = GroupError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_symbol(s)
    }
}

/// The symbol of `g^d` from that of `g`.
pub fn power_symbol(s: &MoonshineSymbol, d: u64) -> Result<MoonshineSymbol, GroupError> {
    assert!(d >= 1, "power must be positive");
    let n = s.n / gcd(s.n, d);
    let h = s.h / gcd(s.h, d);
    if !n.is_multiple_of(h) {
        return Err(GroupError::HarmonicsInconsistency(format!(
            "{s} ^ {d}: {h} does not divide {n}"
        )));
    }
    let m = n / h;
    let mut divisors = BTreeSet::new();
    for &e in s.divisors.iter().filter(|&&e| m.is_multiple_of(e)) {
        if !is_exact_divisor(e, m) {
            return Err(GroupError::HarmonicsInconsistency(format!(
                "{s} ^ {d}: {e} divides {m} but not exactly"
            )));
        }
        if e != 1 {
            divisors.insert(e);
        }
    }
    Ok(MoonshineSymbol { n, h, divisors })
}
