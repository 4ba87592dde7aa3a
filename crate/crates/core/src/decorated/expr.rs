//! Parser for coefficient system expressions.
//!
//! ```text
//! expr   := factor ('*' factor)*
//! factor := 'K' | 'H1' | 'Det' | 'C'
//!         | 'Sym' num '(' expr ')'
//!         | 'B' num | 'L1B' num
//!         | 'CH' '<' (even | odd | int) ',' num '>'
//!         | '(' expr ')'
//! num    := int | '<' int '>'
//! ```

use crate::coeff::{Chains, Det, Homology, HpComplex, Memo, SymPower, System, Tensor, Trivial, H1};
use crate::error::{Error, Result};
use std::sync::Arc;

/// `B_h`: the hp homology of the dual numbers with odd generator in its lowest degree.
pub fn bh(h: usize) -> System {
    Arc::new(Homology::new(Arc::new(HpComplex::new(1, h)), h as i32, 0, format!("B{h}")))
}

/// `L^1 B_h`: the same homology one vertex hair up.
pub fn l1bh(h: usize) -> System {
    Arc::new(Homology::new(Arc::new(HpComplex::new(1, h)), h as i32 + 1, 0, format!("L1B{h}")))
}

/// Parses an expression into a memoized system.
pub fn parse_system(src: &str) -> Result<System> {
    let mut p = Parser { src, pos: 0 };
    let sys = p.expr()?;
    p.skip_ws();
    if p.pos < src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(Memo::wrap(sys))
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.rest().starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{token}'")))
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.rest().starts_with('-') {
            self.pos += 1;
        }
        let digits = self.rest().chars().take_while(|c| c.is_ascii_digit()).count();
        if digits == 0 {
            self.pos = start;
            return Err(self.error("expected an integer"));
        }
        self.pos += digits;
        self.src[start..self.pos].parse().map_err(|_| Error::Parse {
            pos: start,
            msg: "integer out of range".into(),
        })
    }

    fn count(&mut self) -> Result<usize> {
        let angled = self.eat("<");
        let start = self.pos;
        let k = self.int()?;
        if angled {
            self.expect(">")?;
        }
        usize::try_from(k).map_err(|_| Error::Parse {
            pos: start,
            msg: "expected a nonnegative count".into(),
        })
    }

    fn expr(&mut self) -> Result<System> {
        let mut acc = self.factor()?;
        while self.eat("*") {
            let rhs = self.factor()?;
            acc = Arc::new(Tensor::new(acc, rhs));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<System> {
        self.skip_ws();
        if self.eat("(") {
            let e = self.expr()?;
            self.expect(")")?;
            return Ok(e);
        }
        if self.eat("Sym") {
            let k = self.count()?;
            self.expect("(")?;
            let inner = self.expr()?;
            self.expect(")")?;
            return Ok(Arc::new(SymPower::new(inner, k)));
        }
        if self.eat("CH") {
            self.expect("<")?;
            self.skip_ws();
            let d = if self.eat("even") {
                0
            } else if self.eat("odd") {
                1
            } else {
                self.int()? as i32
            };
            self.expect(",")?;
            let h = self.count()?;
            self.expect(">")?;
            return Ok(Arc::new(HpComplex::new(d, h)));
        }
        if self.eat("L1B") {
            return Ok(l1bh(self.count()?));
        }
        if self.eat("H1") {
            return Ok(Arc::new(H1));
        }
        if self.eat("Det") {
            return Ok(Arc::new(Det));
        }
        if self.eat("B") {
            return Ok(bh(self.count()?));
        }
        if self.eat("K") {
            return Ok(Arc::new(Trivial));
        }
        if self.eat("C") {
            return Ok(Arc::new(Chains));
        }
        Err(self.error("expected a coefficient system"))
    }
}
