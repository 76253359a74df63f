use std::fmt::{self, Write};

use crate::formula::{Formula, FormulaKind};

/// Renders `f` with as few parentheses as the grammar allows.
pub fn print_formula(f: &Formula) -> String {
    let mut s = String::new();
    write_formula(&mut s, f).expect("writing to a String cannot fail");
    s
}

pub fn write_formula<W: Write>(out: &mut W, f: &Formula) -> fmt::Result {
    use FormulaKind::*;
    match f.kind() {
        Var(v) => out.write_str(v),
        Implies(a, b) => {
            write_operand(out, a)?;
            out.write_str(" -> ")?;
            write_formula(out, b)
        }
        Not(g) => {
            out.write_char('!')?;
            write_operand(out, g)
        }
        Nec(g) => {
            out.write_str("N ")?;
            write_operand(out, g)
        }
        Knows(a, g) => {
            write!(out, "K[{a}] ")?;
            write_operand(out, g)
        }
        Happy(a, g) => {
            write!(out, "H[{a}] ")?;
            write_operand(out, g)
        }
        Sad(a, g) => {
            write!(out, "S[{a}] ")?;
            write_operand(out, g)
        }
        HappyDeg(a, d, g) => {
            write!(out, "H[{a};{}] ", d.normalize())?;
            write_operand(out, g)
        }
        SadDeg(a, d, g) => {
            write!(out, "S[{a};{}] ", d.normalize())?;
            write_operand(out, g)
        }
    }
}

/// Operands of unary operators and left sides of `->` are unary-level.
fn write_operand<W: Write>(out: &mut W, f: &Formula) -> fmt::Result {
    if let FormulaKind::Implies(..) = f.kind() {
        out.write_char('(')?;
        write_formula(out, f)?;
        out.write_char(')')
    } else {
        write_formula(out, f)
    }
}
