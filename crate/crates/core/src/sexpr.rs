//! Minimal s-expression support for the SyGuS-IF dialect this crate emits and
//! consumes: symbols, decimal integers, and lists. Comments run from `;` to
//! end of line.
//!
//! Equality of emitted documents is normatively defined on the comment- and
//! whitespace-insensitive token stream, not on bytes; see [`tokens`] and
//! [`token_eq`].

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

/// One parsed s-expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sexp {
    Sym(String),
    Int(i64),
    List(Vec<Sexp>),
}

impl Sexp {
    pub fn sym(s: &str) -> Sexp {
        Sexp::Sym(s.to_string())
    }

    pub fn as_sym(&self) -> Option<&str> {
        match self {
            Sexp::Sym(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Sexp::Int(i) => Some(*i),
            _ => None,
        }
    }

    pub fn as_list(&self) -> Option<&[Sexp]> {
        match self {
            Sexp::List(items) => Some(items),
            _ => None,
        }
    }
}

impl fmt::Display for Sexp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sexp::Sym(s) => f.write_str(s),
            Sexp::Int(i) => write!(f, "{}", i),
            Sexp::List(items) => {
                f.write_str("(")?;
                for (k, item) in items.iter().enumerate() {
                    if k > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{}", item)?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Syntax error with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {} col {}: {}", self.line, self.col, self.message)
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Open,
    Close,
    Atom(String),
}

struct Lexer<'a> {
    chars: core::iter::Peekable<core::str::Chars<'a>>,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.chars().peekable(),
            line: 1,
            col: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    /// Next token plus the position where it starts.
    fn next_token(&mut self) -> Option<(Token, usize, usize)> {
        loop {
            let &c = self.chars.peek()?;
            if c.is_whitespace() {
                self.bump();
            } else if c == ';' {
                while let Some(&c) = self.chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else {
                break;
            }
        }
        let (line, col) = (self.line, self.col);
        let c = *self.chars.peek()?;
        if c == '(' {
            self.bump();
            return Some((Token::Open, line, col));
        }
        if c == ')' {
            self.bump();
            return Some((Token::Close, line, col));
        }
        let mut atom = String::new();
        while let Some(&c) = self.chars.peek() {
            if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                break;
            }
            atom.push(c);
            self.bump();
        }
        Some((Token::Atom(atom), line, col))
    }
}

fn atom_to_sexp(atom: String) -> Sexp {
    let is_int = {
        let digits = atom.strip_prefix('-').unwrap_or(&atom);
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if is_int {
        if let Ok(i) = atom.parse::<i64>() {
            return Sexp::Int(i);
        }
    }
    Sexp::Sym(atom)
}

/// Parse a whole document as a sequence of top-level s-expressions.
pub fn parse_all(text: &str) -> Result<Vec<Sexp>, ParseError> {
    let mut lexer = Lexer::new(text);
    let mut stack: Vec<(Vec<Sexp>, usize, usize)> = Vec::new();
    let mut top = Vec::new();
    while let Some((tok, line, col)) = lexer.next_token() {
        match tok {
            Token::Open => stack.push((Vec::new(), line, col)),
            Token::Close => {
                let (items, ..) = stack.pop().ok_or(ParseError {
                    line,
                    col,
                    message: "unmatched ')'".to_string(),
                })?;
                let list = Sexp::List(items);
                match stack.last_mut() {
                    Some((parent, ..)) => parent.push(list),
                    None => top.push(list),
                }
            }
            Token::Atom(a) => {
                let atom = atom_to_sexp(a);
                match stack.last_mut() {
                    Some((parent, ..)) => parent.push(atom),
                    None => top.push(atom),
                }
            }
        }
    }
    if let Some((_, line, col)) = stack.pop() {
        return Err(ParseError {
            line,
            col,
            message: "unclosed '('".to_string(),
        });
    }
    Ok(top)
}

/// Parse exactly one s-expression; trailing forms are an error.
pub fn parse_one(text: &str) -> Result<Sexp, ParseError> {
    let mut forms = parse_all(text)?;
    match forms.len() {
        0 => Err(ParseError {
            line: 1,
            col: 1,
            message: "empty input".to_string(),
        }),
        1 => Ok(forms.remove(0)),
        _ => Err(ParseError {
            line: 1,
            col: 1,
            message: "expected a single expression".to_string(),
        }),
    }
}

/// The comment-stripped token stream: `(`, `)`, and atoms in order.
pub fn tokens(text: &str) -> Vec<String> {
    let mut lexer = Lexer::new(text);
    let mut out = Vec::new();
    while let Some((tok, ..)) = lexer.next_token() {
        out.push(match tok {
            Token::Open => "(".to_string(),
            Token::Close => ")".to_string(),
            Token::Atom(a) => a,
        });
    }
    out
}

/// Token-stream equality: insensitive to whitespace and `;` comments.
pub fn token_eq(a: &str, b: &str) -> bool {
    tokens(a) == tokens(b)
}

/// First index at which two token streams diverge, for diagnostics.
pub fn first_token_mismatch(a: &str, b: &str) -> Option<(usize, Option<String>, Option<String>)> {
    let ta = tokens(a);
    let tb = tokens(b);
    for i in 0..ta.len().max(tb.len()) {
        if ta.get(i) != tb.get(i) {
            return Some((i, ta.get(i).cloned(), tb.get(i).cloned()));
        }
    }
    None
}
