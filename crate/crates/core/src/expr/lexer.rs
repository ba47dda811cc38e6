use super::ast::{Pos, Span};
use super::ExprError;

#[derive(Debug, Clone, PartialEq)]
pub enum Tok {
    Num(f64),
    Ident(String),
    Str(String),
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Num(v) => format!("number {v}"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Str(s) => format!("string \"{s}\""),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Slash => "'/'".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
}

struct Cursor<'a> {
    src: &'a str,
    offset: usize,
    line: usize,
    col: usize,
}

impl Cursor<'_> {
    fn pos(&self) -> Pos {
        Pos { line: self.line, col: self.col, offset: self.offset }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.offset..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.offset += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn eat_while(&mut self, pred: impl Fn(char) -> bool) {
        while self.peek().is_some_and(&pred) {
            self.bump();
        }
    }
}

pub fn tokenize(src: &str) -> Result<Vec<Token>, ExprError> {
    let mut cur = Cursor { src, offset: 0, line: 1, col: 1 };
    let mut out = Vec::new();
    loop {
        cur.eat_while(char::is_whitespace);
        let start = cur.pos();
        let Some(c) = cur.peek() else {
            out.push(Token { tok: Tok::Eof, span: Span { start, end: start } });
            return Ok(out);
        };
        let tok = match c {
            '(' | ')' | ',' | '+' | '-' | '*' | '/' => {
                cur.bump();
                match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    ',' => Tok::Comma,
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    _ => Tok::Slash,
                }
            }
            '0'..='9' | '.' => lex_number(&mut cur, start)?,
            c if c.is_ascii_alphabetic() || c == '_' => {
                cur.eat_while(|c| c.is_ascii_alphanumeric() || c == '_');
                Tok::Ident(src[start.offset..cur.offset].to_string())
            }
            '"' => {
                cur.bump();
                cur.eat_while(|c| c != '"' && c != '\n');
                if cur.peek() != Some('"') {
                    return Err(ExprError::Syntax {
                        pos: cur.pos(),
                        expected: vec!["'\"'".into()],
                        found: "end of line".into(),
                    });
                }
                let text = src[start.offset + 1..cur.offset].to_string();
                cur.bump();
                Tok::Str(text)
            }
            other => {
                return Err(ExprError::Syntax {
                    pos: start,
                    expected: vec!["number".into(), "identifier".into(), "operator".into(), "'('".into()],
                    found: format!("character '{other}'"),
                })
            }
        };
        out.push(Token { tok, span: Span { start, end: cur.pos() } });
    }
}

fn lex_number(cur: &mut Cursor<'_>, start: Pos) -> Result<Tok, ExprError> {
    let digits = |c: char| c.is_ascii_digit();
    cur.eat_while(digits);
    if cur.peek() == Some('.') {
        cur.bump();
        cur.eat_while(digits);
    }
    if matches!(cur.peek(), Some('e' | 'E')) {
        let rest = &cur.src[cur.offset + 1..];
        let signed = rest.starts_with(['+', '-']);
        let exp_digits = if signed { &rest[1..] } else { rest };
        if exp_digits.starts_with(|c: char| c.is_ascii_digit()) {
            cur.bump();
            if signed {
                cur.bump();
            }
            cur.eat_while(digits);
        }
    }
    let text = &cur.src[start.offset..cur.offset];
    text.parse::<f64>().map(Tok::Num).map_err(|_| ExprError::Syntax {
        pos: start,
        expected: vec!["number".into()],
        found: format!("'{text}'"),
    })
}
