//! The little language of lattice statements.
//!
//! Grammar, loosest to tightest: `t1 = t2` or `t1 =< t2` relate two terms;
//! a term is built from `v` (join), `^` (meet), postfix `'`
//! (orthocomplement), the constants `0` and `1`, named variables, and
//! parentheses. Complement binds tighter than meet, meet tighter than join;
//! the binary operators associate to the left.
//!
//! A bare token `v` is always the join operator, so a variable cannot be
//! named `v`; any other run of letters, digits and underscores starting
//! with a letter is a variable name. Example statements:
//!
//! ```text
//! a ^ (b v c) = (a^b) v (a^c)
//! (a v b)' = a' ^ b'
//! a =< b
//! ```

use std::fmt;

use thiserror::Error;

/// A term over lattice operations and named variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeTerm {
    Zero,
    One,
    Var(String),
    /// Postfix orthocomplement `t'`.
    Ortho(Box<LatticeTerm>),
    Meet(Box<LatticeTerm>, Box<LatticeTerm>),
    Join(Box<LatticeTerm>, Box<LatticeTerm>),
}

/// Relation between the two sides of a statement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// `=`
    Equal,
    /// `=<`
    Leq,
}

/// An equation `t1 = t2` or inequality `t1 =< t2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeStatement {
    pub lhs: LatticeTerm,
    pub relation: Relation,
    pub rhs: LatticeTerm,
}

impl LatticeStatement {
    /// Variable names of both sides, sorted and deduplicated.
    pub fn variables(&self) -> Vec<String> {
        let mut vars = Vec::new();
        self.lhs.collect_variables(&mut vars);
        self.rhs.collect_variables(&mut vars);
        vars.sort();
        vars.dedup();
        vars
    }
}

impl LatticeTerm {
    fn collect_variables(&self, out: &mut Vec<String>) {
        match self {
            LatticeTerm::Zero | LatticeTerm::One => {}
            LatticeTerm::Var(name) => out.push(name.clone()),
            LatticeTerm::Ortho(t) => t.collect_variables(out),
            LatticeTerm::Meet(a, b) | LatticeTerm::Join(a, b) => {
                a.collect_variables(out);
                b.collect_variables(out);
            }
        }
    }

    /// Precedence level for the serializer: join 0, meet 1, atoms 2.
    fn level(&self) -> u8 {
        match self {
            LatticeTerm::Join(..) => 0,
            LatticeTerm::Meet(..) => 1,
            _ => 2,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min_level: u8) -> fmt::Result {
        let needs_parens = self.level() < min_level;
        if needs_parens {
            write!(f, "(")?;
        }
        match self {
            LatticeTerm::Zero => write!(f, "0")?,
            LatticeTerm::One => write!(f, "1")?,
            LatticeTerm::Var(name) => write!(f, "{name}")?,
            LatticeTerm::Ortho(t) => {
                t.fmt_at(f, 2)?;
                write!(f, "'")?;
            }
            LatticeTerm::Meet(a, b) => {
                a.fmt_at(f, 1)?;
                write!(f, " ^ ")?;
                b.fmt_at(f, 2)?;
            }
            LatticeTerm::Join(a, b) => {
                a.fmt_at(f, 0)?;
                write!(f, " v ")?;
                b.fmt_at(f, 1)?;
            }
        }
        if needs_parens {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for LatticeTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

impl fmt::Display for LatticeStatement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = match self.relation {
            Relation::Equal => "=",
            Relation::Leq => "=<",
        };
        write!(f, "{} {} {}", self.lhs, rel, self.rhs)
    }
}

/// Syntax errors carry the byte offset of the offending input.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum StatementError {
    #[error("unexpected character {character:?} at byte {offset}")]
    UnexpectedChar { character: char, offset: usize },
    #[error("expected {expected} at byte {offset}")]
    Expected { expected: &'static str, offset: usize },
    #[error("statement needs a relation '=' or '=<'")]
    MissingRelation,
    #[error("unexpected trailing input at byte {offset}")]
    Trailing { offset: usize },
}

/// Parses one statement line.
pub fn parse_statement(text: &str) -> Result<LatticeStatement, StatementError> {
    let mut p = Parser::new(text);
    let lhs = p.term()?;
    let relation = p.relation()?;
    let rhs = p.term()?;
    p.expect_end()?;
    Ok(LatticeStatement { lhs, relation, rhs })
}

/// Parses a bare term (no relation).
pub fn parse_term(text: &str) -> Result<LatticeTerm, StatementError> {
    let mut p = Parser::new(text);
    let t = p.term()?;
    p.expect_end()?;
    Ok(t)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    LParen,
    RParen,
    Prime,
    MeetOp,
    JoinOp,
    EqRel,
    LeqRel,
    Zero,
    One,
    Ident(String),
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
    end_offset: usize,
}

impl Parser {
    fn new(text: &str) -> Self {
        // tokenization is infallible: unknown characters become one-char
        // "identifiers" rejected with a position at parse time
        let mut tokens = Vec::new();
        let bytes: Vec<(usize, char)> = text.char_indices().collect();
        let mut i = 0;
        while i < bytes.len() {
            let (offset, c) = bytes[i];
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            let tok = match c {
                '(' => Token::LParen,
                ')' => Token::RParen,
                '\'' => Token::Prime,
                '^' => Token::MeetOp,
                '0' => Token::Zero,
                '1' => Token::One,
                '=' => {
                    if matches!(bytes.get(i + 1), Some((_, '<'))) {
                        i += 1;
                        Token::LeqRel
                    } else {
                        Token::EqRel
                    }
                }
                c if c.is_alphabetic() => {
                    let mut name = String::new();
                    while i < bytes.len()
                        && (bytes[i].1.is_alphanumeric() || bytes[i].1 == '_')
                    {
                        name.push(bytes[i].1);
                        i += 1;
                    }
                    i -= 1;
                    if name == "v" {
                        Token::JoinOp
                    } else {
                        Token::Ident(name)
                    }
                }
                other => Token::Ident(other.to_string()),
            };
            tokens.push((tok, offset));
            i += 1;
        }
        Parser { tokens, pos: 0, end_offset: text.len() }
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|&(_, o)| o)
            .unwrap_or(self.end_offset)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(t, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn term(&mut self) -> Result<LatticeTerm, StatementError> {
        let mut t = self.meet_expr()?;
        while self.peek() == Some(&Token::JoinOp) {
            self.bump();
            let rhs = self.meet_expr()?;
            t = LatticeTerm::Join(Box::new(t), Box::new(rhs));
        }
        Ok(t)
    }

    fn meet_expr(&mut self) -> Result<LatticeTerm, StatementError> {
        let mut t = self.unary()?;
        while self.peek() == Some(&Token::MeetOp) {
            self.bump();
            let rhs = self.unary()?;
            t = LatticeTerm::Meet(Box::new(t), Box::new(rhs));
        }
        Ok(t)
    }

    fn unary(&mut self) -> Result<LatticeTerm, StatementError> {
        let mut t = self.atom()?;
        while self.peek() == Some(&Token::Prime) {
            self.bump();
            t = LatticeTerm::Ortho(Box::new(t));
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<LatticeTerm, StatementError> {
        let offset = self.offset();
        match self.bump() {
            Some(Token::Zero) => Ok(LatticeTerm::Zero),
            Some(Token::One) => Ok(LatticeTerm::One),
            Some(Token::Ident(name)) => {
                if name.chars().next().is_some_and(|c| c.is_alphabetic()) {
                    Ok(LatticeTerm::Var(name))
                } else {
                    Err(StatementError::UnexpectedChar {
                        character: name.chars().next().unwrap(),
                        offset,
                    })
                }
            }
            Some(Token::LParen) => {
                let t = self.term()?;
                let close_offset = self.offset();
                match self.bump() {
                    Some(Token::RParen) => Ok(t),
                    _ => Err(StatementError::Expected { expected: "')'", offset: close_offset }),
                }
            }
            _ => Err(StatementError::Expected { expected: "a term", offset }),
        }
    }

    fn relation(&mut self) -> Result<Relation, StatementError> {
        let offset = self.offset();
        match self.bump() {
            Some(Token::EqRel) => Ok(Relation::Equal),
            Some(Token::LeqRel) => Ok(Relation::Leq),
            Some(Token::Ident(name))
                if !name.chars().next().is_some_and(char::is_alphabetic) =>
            {
                Err(StatementError::UnexpectedChar {
                    character: name.chars().next().unwrap(),
                    offset,
                })
            }
            _ => Err(StatementError::MissingRelation),
        }
    }

    fn expect_end(&mut self) -> Result<(), StatementError> {
        if self.pos == self.tokens.len() {
            Ok(())
        } else {
            Err(StatementError::Trailing { offset: self.offset() })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use LatticeTerm::*;

    fn var(name: &str) -> LatticeTerm {
        Var(name.to_string())
    }

    #[test]
    fn parses_de_morgan() {
        let s = parse_statement("(a v b)' = a' ^ b'").unwrap();
        assert_eq!(s.relation, Relation::Equal);
        assert_eq!(
            s.lhs,
            Ortho(Box::new(Join(Box::new(var("a")), Box::new(var("b")))))
        );
        assert_eq!(
            s.rhs,
            Meet(
                Box::new(Ortho(Box::new(var("a")))),
                Box::new(Ortho(Box::new(var("b"))))
            )
        );
    }

    #[test]
    fn precedence_complement_meet_join() {
        // a v b ^ c' reads as a v (b ^ (c'))
        let t = parse_term("a v b ^ c'").unwrap();
        assert_eq!(
            t,
            Join(
                Box::new(var("a")),
                Box::new(Meet(Box::new(var("b")), Box::new(Ortho(Box::new(var("c"))))))
            )
        );
    }

    #[test]
    fn binary_operators_associate_left() {
        assert_eq!(
            parse_term("a v b v c").unwrap(),
            Join(
                Box::new(Join(Box::new(var("a")), Box::new(var("b")))),
                Box::new(var("c"))
            )
        );
    }

    #[test]
    fn parses_inequality() {
        let s = parse_statement("a =< b").unwrap();
        assert_eq!(s.relation, Relation::Leq);
        assert_eq!(s.lhs, var("a"));
        assert_eq!(s.rhs, var("b"));
    }

    #[test]
    fn parses_constants() {
        let s = parse_statement("a ^ b' = 0").unwrap();
        assert_eq!(s.rhs, Zero);
        assert_eq!(parse_term("1'").unwrap(), Ortho(Box::new(One)));
    }

    #[test]
    fn double_complement_parses() {
        assert_eq!(
            parse_term("a''").unwrap(),
            Ortho(Box::new(Ortho(Box::new(var("a")))))
        );
    }

    #[test]
    fn bare_v_is_never_a_variable() {
        assert!(parse_term("v").is_err());
        // but longer names containing v are fine
        assert_eq!(parse_term("vv").unwrap(), var("vv"));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            parse_statement("a $ b"),
            Err(StatementError::UnexpectedChar { character: '$', offset: 2 })
        );
        assert_eq!(
            parse_statement("(a v b = c"),
            Err(StatementError::Expected { expected: "')'", offset: 7 })
        );
        assert_eq!(parse_statement("a b"), Err(StatementError::MissingRelation));
        assert_eq!(
            parse_statement("a = b c"),
            Err(StatementError::Trailing { offset: 6 })
        );
    }

    #[test]
    fn variables_are_sorted_and_unique() {
        let s = parse_statement("z ^ a v z = b").unwrap();
        assert_eq!(s.variables(), vec!["a", "b", "z"]);
    }

    #[test]
    fn display_round_trips() {
        for text in [
            "a ^ (b v c) = (a ^ b) v (a ^ c)",
            "(a v b)' = a' ^ b'",
            "a =< b v c'",
            "a v (b v c) = (a v b) v c",
            "x ^ 1 = x v 0",
            "a'' = a",
        ] {
            let s = parse_statement(text).unwrap();
            let printed = s.to_string();
            let again = parse_statement(&printed).unwrap();
            assert_eq!(s, again, "{text} → {printed}");
        }
    }
}
