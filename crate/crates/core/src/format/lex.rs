use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Token {
    pub text: String,
    pub line: usize,
    pub col: usize,
    /// Punctuation (`{`, `}`, `;`) as opposed to a word or quoted string.
    pub punct: bool,
}

impl Token {
    pub fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { line: self.line, col: self.col, msg: msg.into() }
    }

    pub fn is(&self, p: &str) -> bool {
        self.text == p
    }
}

fn is_word_char(c: char) -> bool {
    !c.is_whitespace() && !matches!(c, '{' | '}' | ';' | '"' | '#')
}

/// Splits a document into words, quoted strings and punctuation. `#` starts a
/// comment running to the end of the line.
pub(crate) fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (line, col) = (ln + 1, i + 1);
            if c.is_whitespace() {
                i += 1;
            } else if c == '#' {
                break;
            } else if matches!(c, '{' | '}' | ';') {
                out.push(Token { text: c.to_string(), line, col, punct: true });
                i += 1;
            } else if c == '"' {
                let start = i + 1;
                let end = chars[start..].iter().position(|&x| x == '"').map(|p| start + p).ok_or(Error::Parse {
                    line,
                    col,
                    msg: "unterminated string".into(),
                })?;
                out.push(Token { text: chars[start..end].iter().collect(), line, col, punct: false });
                i = end + 1;
            } else {
                let start = i;
                while i < chars.len() && is_word_char(chars[i]) {
                    i += 1;
                }
                out.push(Token { text: chars[start..i].iter().collect(), line, col, punct: false });
            }
        }
    }
    Ok(out)
}

/// Renders a name as a token, quoting it when it would not lex as one word.
pub(crate) fn quote(name: &str) -> String {
    let clean: String = name.chars().filter(|&c| c != '"').collect();
    if !clean.is_empty() && clean.chars().all(is_word_char) {
        clean
    } else {
        format!("\"{clean}\"")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_and_quotes() {
        let toks = tokenize("fiber u { # comment\n  elements \"{0,1}\" b; }").unwrap();
        let texts: Vec<&str> = toks.iter().map(|t| t.text.as_str()).collect();
        assert_eq!(texts, ["fiber", "u", "{", "elements", "{0,1}", "b", ";", "}"]);
        assert_eq!((toks[4].line, toks[4].col), (2, 12));
        assert_eq!(quote("{0,1}"), "\"{0,1}\"");
        assert_eq!(quote("⊤"), "⊤");
    }
}
