//! Family specifiers such as `path:7`, `grid:2x9`, `familyE:seed=42,k=3`
//! or `mop:n=7,chords=0-2/0-3/0-4/0-5`.
//!
//! ```text
//! spec   := name [ ':' args ]
//! args   := int | int 'x' int | word | kv (',' kv)*
//! kv     := key '=' (int | chord ('/' chord)*)
//! chord  := int '-' int
//! ```

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::families::*;

#[derive(Debug, PartialEq)]
enum Args {
    None,
    One(usize),
    Two(usize, usize),
    Word(String),
    Keys(BTreeMap<String, (usize, KeyValue)>),
}

#[derive(Debug, PartialEq)]
enum KeyValue {
    Int(u64),
    Chords(Vec<(usize, usize)>),
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected '{c}'")))
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.peek().filter(|&c| f(c)) {
            self.pos += c.len_utf8();
        }
        &self.text[start..self.pos]
    }

    fn int(&mut self) -> Result<u64> {
        let start = self.pos;
        let digits = self.take_while(|c| c.is_ascii_digit());
        if digits.is_empty() {
            return Err(Error::parse(start, "expected an integer"));
        }
        digits.parse().map_err(|_| Error::parse(start, "integer too large"))
    }

    fn small(&mut self) -> Result<usize> {
        let start = self.pos;
        let v = self.int()?;
        if v > 4096 {
            return Err(Error::parse(start, format!("parameter {v} is out of range")));
        }
        Ok(v as usize)
    }

    fn done(&self) -> bool {
        self.pos == self.text.len()
    }
}

fn parse_args(c: &mut Cursor<'_>) -> Result<Args> {
    if c.done() {
        return Ok(Args::None);
    }
    match c.peek() {
        Some(d) if d.is_ascii_digit() => {
            let a = c.small()?;
            if c.eat('x') {
                Ok(Args::Two(a, c.small()?))
            } else {
                Ok(Args::One(a))
            }
        }
        Some(l) if l.is_ascii_alphabetic() => {
            let start = c.pos;
            let word = c.take_while(|ch| ch.is_ascii_alphanumeric() || ch == '_');
            if !c.eat('=') {
                return Ok(Args::Word(word.to_string()));
            }
            c.pos = start;
            let mut keys = BTreeMap::new();
            loop {
                let at = c.pos;
                let key = c.take_while(|ch| ch.is_ascii_alphanumeric() || ch == '_');
                if key.is_empty() {
                    return Err(Error::parse(at, "expected a key"));
                }
                c.expect('=')?;
                let first = c.int()?;
                let value = if c.peek() == Some('-') {
                    let mut chords = Vec::new();
                    let mut a = first;
                    loop {
                        c.expect('-')?;
                        let b = c.int()?;
                        if a > 64 || b > 64 {
                            return Err(Error::parse(at, "chord endpoint out of range"));
                        }
                        chords.push((a as usize, b as usize));
                        if !c.eat('/') {
                            break;
                        }
                        a = c.int()?;
                    }
                    KeyValue::Chords(chords)
                } else {
                    KeyValue::Int(first)
                };
                if keys.insert(key.to_string(), (at, value)).is_some() {
                    return Err(Error::parse(at, format!("duplicate key {key:?}")));
                }
                if !c.eat(',') {
                    break;
                }
            }
            Ok(Args::Keys(keys))
        }
        _ => Err(Error::parse(c.pos, "unexpected character in arguments")),
    }
}

struct KeyArgs {
    keys: BTreeMap<String, (usize, KeyValue)>,
    at: usize,
}

impl KeyArgs {
    fn allow(&self, known: &[&str]) -> Result<()> {
        match self.keys.iter().find(|(k, _)| !known.contains(&k.as_str())) {
            Some((k, (pos, _))) => Err(Error::parse(*pos, format!("unknown key {k:?}"))),
            None => Ok(()),
        }
    }

    fn int(&mut self, key: &str, default: Option<u64>) -> Result<u64> {
        match self.keys.remove(key) {
            Some((_, KeyValue::Int(v))) => Ok(v),
            Some((pos, KeyValue::Chords(_))) => Err(Error::parse(pos, format!("{key} takes an integer"))),
            None => default.ok_or_else(|| Error::parse(self.at, format!("missing key {key:?}"))),
        }
    }

    fn small(&mut self, key: &str) -> Result<usize> {
        let pos = self.keys.get(key).map_or(self.at, |(p, _)| *p);
        let v = self.int(key, None)?;
        if v > 4096 {
            return Err(Error::parse(pos, format!("{key}={v} is out of range")));
        }
        Ok(v as usize)
    }

    fn chords(&mut self, key: &str) -> Result<Vec<(usize, usize)>> {
        match self.keys.remove(key) {
            Some((_, KeyValue::Chords(c))) => Ok(c),
            Some((pos, KeyValue::Int(_))) => Err(Error::parse(pos, format!("{key} takes a chord list like 0-2/0-3"))),
            None => Ok(Vec::new()),
        }
    }

}

/// Parses a family specifier and builds the instance.
pub fn parse_family(text: &str) -> Result<FamilyInstance> {
    let mut c = Cursor { text, pos: 0 };
    let name = c.take_while(|ch| ch.is_ascii_alphanumeric() || ch == '_');
    if name.is_empty() {
        return Err(Error::parse(0, "expected a family name"));
    }
    let args_at = if c.done() {
        c.pos
    } else {
        c.expect(':')?;
        c.pos
    };
    let args = parse_args(&mut c)?;
    if !c.done() {
        return Err(Error::parse(c.pos, "trailing characters"));
    }
    let bad = |what: &str| Error::parse(args_at, format!("{name} expects {what}"));
    let keyed = |args: Args| match args {
        Args::Keys(keys) => Ok(KeyArgs { keys, at: args_at }),
        Args::None => Ok(KeyArgs { keys: BTreeMap::new(), at: args_at }),
        _ => Err(Error::parse(args_at, format!("{name} expects key=value arguments"))),
    };
    match name {
        "path" | "cycle" | "comb" | "corona" | "caterpillar" | "rooks2" => {
            let Args::One(k) = args else { return Err(bad("one integer, e.g. 7")) };
            match name {
                "path" => gen_path(k),
                "cycle" => gen_cycle(k),
                "comb" => gen_comb(k),
                "corona" => gen_double_corona_complete(k),
                "caterpillar" => gen_caterpillar(k),
                _ => gen_rooks2(k),
            }
        }
        "grid" | "kbip" => {
            let Args::Two(a, b) = args else { return Err(bad("two integers, e.g. 2x9")) };
            if name == "grid" {
                gen_grid(a, b)
            } else {
                gen_complete_bipartite(a, b)
            }
        }
        "familyD" | "familyE" | "familyF" => {
            let mut kv = keyed(args)?;
            let size_key = if name == "familyD" { "m" } else { "k" };
            kv.allow(&["seed", size_key])?;
            let seed = kv.int("seed", Some(0))?;
            let size = kv.small(size_key)?;
            match name {
                "familyD" => gen_family_d(seed, size),
                "familyE" => gen_family_e(seed, size),
                _ => gen_family_f(seed, size),
            }
        }
        "mop" => match args {
            Args::Word(w) => match w.as_str() {
                "fan6" => gen_mop(MopKind::Fan6),
                "snake6" => gen_mop(MopKind::Snake6),
                "sun6" => gen_mop(MopKind::Sun6),
                _ => Err(Error::parse(args_at, format!("unknown MOP {w:?}; use fan6, snake6, sun6 or n=..,chords=.."))),
            },
            args => {
                let mut kv = keyed(args)?;
                kv.allow(&["n", "chords"])?;
                let n = kv.small("n")?;
                let chords = kv.chords("chords")?;
                gen_mop_custom(n, &chords)
            }
        },
        "claw" => match args {
            Args::None => gen_claw_gadget(),
            _ => Err(bad("no arguments")),
        },
        _ => Err(Error::parse(0, format!("unknown family {name:?}"))),
    }
}

impl std::str::FromStr for FamilyInstance {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_family(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_family() {
        for (spec, n) in [
            ("path:7", 7),
            ("cycle:5", 5),
            ("grid:2x9", 18),
            ("kbip:2x3", 5),
            ("rooks2:6", 12),
            ("comb:3", 9),
            ("corona:3", 9),
            ("caterpillar:4", 12),
            ("familyD:seed=1,m=2", 6),
            ("familyE:seed=42,k=3", 9),
            ("familyF:k=2", 6),
            ("mop:fan6", 6),
            ("mop:sun6", 6),
            ("mop:snake6", 6),
            ("mop:n=5,chords=0-2/0-3", 5),
            ("mop:n=3", 3),
            ("claw", 13),
        ] {
            assert_eq!(parse_family(spec).unwrap().graph.n(), n, "{spec}");
        }
    }

    #[test]
    fn keys_round_trip_through_the_parser() {
        for spec in ["path:7", "grid:2x9", "familyE:seed=42,k=3", "mop:fan6", "claw", "corona:6"] {
            let inst = parse_family(spec).unwrap();
            assert_eq!(parse_family(&inst.key()).unwrap(), inst);
        }
    }

    #[test]
    fn error_positions() {
        let pos = |s: &str| match parse_family(s) {
            Err(Error::Parse { pos, .. }) => pos,
            other => panic!("{s}: expected parse error, got {other:?}"),
        };
        assert_eq!(pos(""), 0);
        assert_eq!(pos("pathx"), 0);
        assert_eq!(pos("path;7"), 4);
        assert_eq!(pos("path:7x"), 7);
        assert_eq!(pos("grid:2x"), 7);
        assert_eq!(pos("familyE:seed=42,q=3"), 16);
        assert_eq!(pos("familyE:seed=42,seed=3"), 16);
        assert_eq!(pos("mop:hex6"), 4);
        assert_eq!(pos("path:99999999999999999999999"), 5);
        assert!(matches!(parse_family("path:0"), Err(Error::InvalidParameter(_))));
        assert!(matches!(parse_family("mop:n=6,chords=0-3/1-4/2-4"), Err(Error::InvalidParameter(_))));
    }
}
