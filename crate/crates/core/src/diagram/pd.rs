use super::{Crossing, CrossingKind};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(super) enum Token {
    Crossing(Crossing),
    FreeLoop,
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Self {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.line,
            column: self.column,
            message: message.into(),
        }
    }

    fn skip_blank(&mut self) {
        while let Some(c) = self.peek() {
            if c == '#' {
                while self.peek().is_some_and(|c| c != '\n') {
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn skip_inline_space(&mut self) {
        while self.peek().is_some_and(|c| c == ' ' || c == '\t') {
            self.bump();
        }
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected '{want}', found '{c}'"))),
            None => Err(self.error(format!("expected '{want}', found end of input"))),
        }
    }

    fn label(&mut self) -> Result<u32> {
        let mut digits = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            digits.push(c);
            self.bump();
        }
        if digits.is_empty() {
            return Err(match self.peek() {
                Some(c) => self.error(format!("expected an edge label, found '{c}'")),
                None => self.error("expected an edge label, found end of input"),
            });
        }
        match digits.parse::<u32>() {
            Ok(0) => Err(self.error("edge labels start at 1")),
            Ok(v) => Ok(v),
            Err(_) => Err(self.error(format!("edge label {digits} is out of range"))),
        }
    }

    fn at_token_end(&mut self) -> bool {
        self.peek().is_none_or(|c| c.is_whitespace() || c == '#')
    }
}

pub(super) fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut cur = Cursor::new(text);
    let mut tokens = Vec::new();
    loop {
        cur.skip_blank();
        let Some(c) = cur.peek() else { break };
        match c {
            'O' => {
                cur.bump();
                if !cur.at_token_end() {
                    return Err(cur.error("free loop token 'O' must stand alone"));
                }
                tokens.push(Token::FreeLoop);
            }
            'X' => {
                cur.bump();
                let kind = match cur.peek() {
                    Some('+') => CrossingKind::Positive,
                    Some('-') => CrossingKind::Negative,
                    Some('s') => CrossingKind::Singular,
                    Some(other) => return Err(cur.error(format!("unknown crossing marker 'X{other}'"))),
                    None => return Err(cur.error("crossing marker truncated")),
                };
                cur.bump();
                cur.expect('(')?;
                let mut edges = [0u32; 4];
                for (k, slot) in edges.iter_mut().enumerate() {
                    cur.skip_inline_space();
                    *slot = cur.label()?;
                    cur.skip_inline_space();
                    if k < 3 {
                        if cur.peek() == Some(')') {
                            return Err(cur.error(format!("crossing has {} labels, expected 4", k + 1)));
                        }
                        cur.expect(',')?;
                    }
                }
                if cur.peek() == Some(',') {
                    return Err(cur.error("crossing has more than 4 labels"));
                }
                cur.expect(')')?;
                if !cur.at_token_end() {
                    return Err(cur.error("expected whitespace after crossing"));
                }
                tokens.push(Token::Crossing(Crossing::new(kind, edges)));
            }
            other => return Err(cur.error(format!("unexpected character '{other}'"))),
        }
    }
    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn syntax_at(text: &str) -> (usize, usize) {
        match tokenize(text) {
            Err(Error::Syntax { line, column, .. }) => (line, column),
            other => panic!("expected syntax error for {text:?}, got {other:?}"),
        }
    }

    #[test]
    fn tokens_and_comments() {
        let t = tokenize("# header\nX+(1, 2,3 ,4) O\tXs(5,6,7,8) # trailing\nX-(9,10,11,12)").unwrap();
        assert_eq!(t.len(), 4);
        assert_eq!(t[1], Token::FreeLoop);
        assert_eq!(t[2], Token::Crossing(Crossing::singular([5, 6, 7, 8])));
    }

    #[test]
    fn malformed_tokens() {
        assert_eq!(syntax_at("X+(1,2,3)"), (1, 9));
        syntax_at("X+(1,2,3,4,5)");
        syntax_at("X*(1,2,3,4)");
        syntax_at("X+(1,2,3,0)");
        syntax_at("X+(1,2,3,99999999999)");
        syntax_at("X+(1,2,3,4)X+(5,6,7,8)");
        syntax_at("OO");
        syntax_at("X+ (1,2,3,4)");
        syntax_at("X+(1,2,3,4");
        syntax_at("X");
        assert_eq!(syntax_at("O\n  Y"), (2, 3));
    }
}
