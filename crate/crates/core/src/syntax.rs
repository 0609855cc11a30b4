//! Text syntax for classes.
//!
//! ```text
//! Class  := "0" | Term ("+" Term)*
//! Term   := "(" Expr "," Expr ")"
//! Expr   := Prod (("+" | "-") Prod)*
//! Prod   := Unary (("*" | "/") Unary)*
//! Unary  := "-" Unary | Power
//! Power  := Atom ("^" "-"? Integer)?
//! Atom   := Integer | Var | "z" | "(" Expr ")"
//! ```
//!
//! `Var` is `t` (or `s` on covers); `z` names the generator of `F_{p^k}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::base::BaseField;
use crate::brauer::{BrauerClass, Symbol};
use crate::error::{Error, Result};
use crate::ratfunc::RationalFunction;

/// Largest exponent accepted after `^`.
const MAX_EXPONENT: i64 = 1000;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
    End,
}

struct Lexer;

impl Lexer {
    fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
        let mut out = Vec::new();
        let mut chars = text.char_indices().peekable();
        while let Some(&(i, c)) = chars.peek() {
            if c.is_whitespace() {
                chars.next();
            } else if c.is_ascii_digit() {
                let mut end = i;
                while let Some(&(j, d)) = chars.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    end = j + d.len_utf8();
                    chars.next();
                }
                let n: BigInt = text[i..end].parse().expect("digits");
                out.push((i, Tok::Num(n)));
            } else if c.is_ascii_alphabetic() {
                let mut end = i;
                while let Some(&(j, d)) = chars.peek() {
                    if !d.is_ascii_alphanumeric() {
                        break;
                    }
                    end = j + d.len_utf8();
                    chars.next();
                }
                out.push((i, Tok::Ident(text[i..end].to_string())));
            } else if "+-*/^(),".contains(c) {
                out.push((i, Tok::Sym(c)));
                chars.next();
            } else {
                return Err(Error::Syntax {
                    offset: i,
                    message: format!("unexpected character '{c}'"),
                });
            }
        }
        out.push((text.len(), Tok::End));
        Ok(out)
    }
}

struct Parser<'a, K: BaseField> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    field: &'a K,
    var: &'a str,
}

impl<'a, K: BaseField> Parser<'a, K> {
    fn new(text: &str, field: &'a K, var: &'a str) -> Result<Self> {
        Ok(Parser {
            toks: Lexer::tokenize(text)?,
            pos: 0,
            field,
            var,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected '{c}'"))
        }
    }

    fn at_end(&self) -> Result<()> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            self.error("unexpected trailing input")
        }
    }

    fn class(&mut self, torsion: u32) -> Result<BrauerClass<K>> {
        let mut symbols = Vec::new();
        if matches!(self.peek(), Tok::End) {
            return BrauerClass::zero(self.field, torsion);
        }
        if matches!(self.peek(), Tok::Num(n) if n == &BigInt::from(0)) {
            self.bump();
            self.at_end()?;
            return BrauerClass::zero(self.field, torsion);
        }
        loop {
            let start = self.offset();
            self.expect('(')?;
            let a = self.expr()?;
            self.expect(',')?;
            let b = self.expr()?;
            self.expect(')')?;
            if a.is_zero() || b.is_zero() {
                return Err(Error::Semantic(format!("symbol at offset {start} has a zero entry")));
            }
            symbols.push(Symbol::new(a, b)?);
            if *self.peek() == Tok::Sym('+') {
                self.bump();
            } else {
                break;
            }
        }
        self.at_end()?;
        BrauerClass::new(self.field, torsion, symbols)
    }

    fn expr(&mut self) -> Result<RationalFunction<K>> {
        let mut acc = self.prod()?;
        loop {
            match self.peek() {
                Tok::Sym('+') if self.starts_operand(1) => {
                    self.bump();
                    acc = acc.add(&self.prod()?);
                }
                Tok::Sym('-') => {
                    self.bump();
                    acc = acc.sub(&self.prod()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    /// Whether the token `k` ahead can begin an operand. Keeps `+` between
    /// symbols of a class from being read as addition inside an entry.
    fn starts_operand(&self, k: usize) -> bool {
        matches!(
            self.toks.get(self.pos + k).map(|t| &t.1),
            Some(Tok::Num(_) | Tok::Ident(_) | Tok::Sym('-') | Tok::Sym('('))
        )
    }

    fn prod(&mut self) -> Result<RationalFunction<K>> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Sym('*') => {
                    self.bump();
                    acc = acc.mul(&self.unary()?);
                }
                Tok::Sym('/') => {
                    self.bump();
                    let at = self.offset();
                    let d = self.unary()?;
                    if d.is_zero() {
                        return Err(Error::Semantic(format!("division by zero at offset {at}")));
                    }
                    acc = acc.div(&d)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction<K>> {
        if *self.peek() == Tok::Sym('-') {
            self.bump();
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<RationalFunction<K>> {
        let base = self.atom()?;
        if *self.peek() != Tok::Sym('^') {
            return Ok(base);
        }
        self.bump();
        let negative = if *self.peek() == Tok::Sym('-') {
            self.bump();
            true
        } else {
            false
        };
        let at = self.offset();
        let Tok::Num(n) = self.peek().clone() else {
            return self.error("expected an integer exponent");
        };
        self.bump();
        let e = n
            .to_i64()
            .filter(|e| *e <= MAX_EXPONENT)
            .ok_or(Error::Syntax {
                offset: at,
                message: format!("exponent larger than {MAX_EXPONENT}"),
            })?;
        let e = if negative { -e } else { e };
        if e < 0 && base.is_zero() {
            return Err(Error::Semantic(format!("negative power of zero at offset {at}")));
        }
        base.pow(e)
    }

    fn atom(&mut self) -> Result<RationalFunction<K>> {
        let at = self.offset();
        match self.bump() {
            Tok::Num(n) => {
                let c = self
                    .field
                    .from_rational(&BigRational::from_integer(n))
                    .expect("integers embed in every field");
                Ok(RationalFunction::constant(self.field, c))
            }
            Tok::Ident(name) if name == self.var => Ok(RationalFunction::t(self.field)),
            Tok::Ident(name) if name == "z" => match self.field.named_generator() {
                Some(z) => Ok(RationalFunction::constant(self.field, z)),
                None => Err(Error::Syntax {
                    offset: at,
                    message: format!("'z' is only defined over F_(p^k), not {}", self.field.label()),
                }),
            },
            Tok::Ident(name) => Err(Error::Syntax {
                offset: at,
                message: format!("unknown identifier '{name}'"),
            }),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Tok::End => Err(Error::Syntax {
                offset: at,
                message: "unexpected end of input".into(),
            }),
            Tok::Sym(c) => Err(Error::Syntax {
                offset: at,
                message: format!("unexpected '{c}'"),
            }),
        }
    }
}

/// Parses a class expression over `field` with the given torsion.
pub fn parse_class<K: BaseField>(text: &str, field: &K, torsion: u32) -> Result<BrauerClass<K>> {
    Parser::new(text, field, "t")?.class(torsion)
}

/// Parses a rational function in the variable `var`.
pub fn parse_function<K: BaseField>(text: &str, field: &K, var: &str) -> Result<RationalFunction<K>> {
    let mut p = Parser::new(text, field, var)?;
    let f = p.expr()?;
    p.at_end()?;
    Ok(f)
}

/// Parses a constant such as `3`, `-1/2` or `z + 1`.
pub fn parse_element<K: BaseField>(text: &str, field: &K) -> Result<K::Elem> {
    let f = parse_function(text, field, "\u{0}")?;
    f.as_constant()
        .ok_or_else(|| Error::Semantic(format!("'{text}' is not a constant")))
}

/// A parsed class together with its source and declarations.
#[derive(Clone, Debug)]
pub struct ClassExpression<K: BaseField> {
    pub source: String,
    pub class: BrauerClass<K>,
}

impl<K: BaseField> ClassExpression<K> {
    pub fn parse(text: &str, field: &K, torsion: u32) -> Result<Self> {
        Ok(ClassExpression {
            source: text.to_string(),
            class: parse_class(text, field, torsion)?,
        })
    }

    pub fn base(&self) -> String {
        self.class.field().label()
    }

    pub fn torsion(&self) -> u32 {
        self.class.torsion()
    }

    /// The canonical text of the parsed class.
    pub fn canonical(&self) -> String {
        self.class.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Field, FiniteField, Rationals};
    use crate::poly::Poly;
    use proptest::prelude::*;

    #[test]
    fn documented_examples() {
        let c = parse_class("(t^2-2, 3*t) + (5, t-1)", &Rationals, 2).unwrap();
        assert_eq!(c.symbols().len(), 2);
        assert_eq!(c.to_string(), "(t^2 - 2, 3*t) + (5, t - 1)");
        let c = parse_class("(1/2, t)", &Rationals, 2).unwrap();
        assert_eq!(c.symbols()[0].left.as_constant(), Some(Rationals.from_i64(1) / Rationals.from_i64(2)));
        assert_eq!(
            parse_class("(t,", &Rationals, 2).unwrap_err(),
            Error::Syntax {
                offset: 3,
                message: "unexpected end of input".into()
            }
        );
    }

    #[test]
    fn zero_class_and_errors() {
        assert!(parse_class("0", &Rationals, 2).unwrap().is_empty());
        assert!(parse_class("  ", &Rationals, 2).unwrap().is_empty());
        assert!(matches!(parse_class("(0, t)", &Rationals, 2), Err(Error::Semantic(_))));
        assert!(matches!(parse_class("(t - t, 2)", &Rationals, 2), Err(Error::Semantic(_))));
        assert!(matches!(parse_class("(1/0, 2)", &Rationals, 2), Err(Error::Semantic(_))));
        assert!(matches!(parse_class("(t, 2) (t, 3)", &Rationals, 2), Err(Error::Syntax { offset: 7, .. })));
        assert!(matches!(parse_class("(x, 2)", &Rationals, 2), Err(Error::Syntax { offset: 1, .. })));
        assert!(matches!(parse_class("(t, 2)", &Rationals, 3), Err(Error::Scope(_))));
        assert!(matches!(parse_class("(1/7, t)", &FiniteField::new(7).unwrap(), 3), Err(Error::Semantic(_))));
    }

    #[test]
    fn rational_function_entries() {
        let c = parse_class("((t^2 - 1)/(t + 1), t^-2 * 4)", &Rationals, 2).unwrap();
        assert_eq!(c.to_string(), "(t - 1, (4)/(t^2))");
        let f = parse_function("-1/2*s + 3", &Rationals, "s").unwrap();
        assert_eq!(f.display_with("s").to_string(), "-1/2*s + 3");
    }

    #[test]
    fn prime_power_fields() {
        let f9 = FiniteField::new(9).unwrap();
        let c = parse_class("((z + 1)*t^2 + z, t - z)", &f9, 2).unwrap();
        let again = parse_class(&c.to_string(), &f9, 2).unwrap();
        assert_eq!(again.symbols(), c.symbols());
        assert!(parse_class("(z, t)", &Rationals, 2).is_err());
    }

    fn arb_entry() -> impl Strategy<Value = (Vec<(i64, i64)>, Vec<i64>)> {
        (
            proptest::collection::vec((-9i64..=9, 1i64..=4), 1..=4),
            proptest::collection::vec(-5i64..=5, 1..=3),
        )
    }

    fn build(e: &(Vec<(i64, i64)>, Vec<i64>)) -> Option<RationalFunction<Rationals>> {
        let num = Poly::new(
            &Rationals,
            e.0.iter()
                .map(|(n, d)| BigRational::new((*n).into(), (*d).into()))
                .collect(),
        );
        let den = Poly::from_ints(&Rationals, &e.1);
        if num.is_zero() || den.is_zero() {
            return None;
        }
        RationalFunction::new(num, den).ok()
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(entries in proptest::collection::vec((arb_entry(), arb_entry()), 0..=3)) {
            let mut symbols = Vec::new();
            for (a, b) in &entries {
                let (Some(a), Some(b)) = (build(a), build(b)) else { continue };
                symbols.push(Symbol::new(a, b).unwrap());
            }
            let c = BrauerClass::new(&Rationals, 2, symbols).unwrap();
            let text = c.to_string();
            let parsed = parse_class(&text, &Rationals, 2).unwrap();
            prop_assert_eq!(parsed.symbols(), c.symbols());
            prop_assert_eq!(parsed.to_string(), text);
        }
    }
}
