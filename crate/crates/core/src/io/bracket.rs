//! `a(b,c(d))` bracket text. Labels are bare `[A-Za-z0-9_.-]+` tokens or
//! double-quoted strings with backslash escapes. Whitespace between tokens is
//! ignored. Blank text is the empty tree.

use super::IoError;
use crate::forest::{Label, NodeId, Tree};

fn is_bare(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '-')
}

struct Lexer<'a> {
    text: &'a str,
    pos: usize,
}

impl Lexer<'_> {
    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn err(&self, msg: impl Into<String>) -> IoError {
        IoError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn label(&mut self) -> Result<Label, IoError> {
        let start = self.pos;
        match self.peek() {
            Some('"') => {
                self.pos += 1;
                let mut out = String::new();
                loop {
                    let Some(c) = self.peek() else {
                        return Err(IoError::Syntax {
                            pos: start,
                            msg: "unterminated quoted label".into(),
                        });
                    };
                    self.pos += c.len_utf8();
                    match c {
                        '"' => break,
                        '\\' => {
                            let Some(e) = self.peek() else {
                                return Err(self.err("unterminated escape"));
                            };
                            self.pos += e.len_utf8();
                            out.push(match e {
                                'n' => '\n',
                                't' => '\t',
                                'r' => '\r',
                                '"' | '\\' => e,
                                _ => return Err(self.err(format!("unknown escape \\{e}"))),
                            });
                        }
                        _ => out.push(c),
                    }
                }
                Label::new(out).map_err(|_| IoError::Syntax {
                    pos: start,
                    msg: "empty label".into(),
                })
            }
            Some(c) if is_bare(c) => {
                let len = self.text[start..].find(|c: char| !is_bare(c)).unwrap_or(self.text.len() - start);
                self.pos += len;
                Ok(Label::new(&self.text[start..self.pos]).unwrap())
            }
            Some(c) => Err(self.err(format!("expected a label, found {c:?}"))),
            None => Err(self.err("expected a label, found end of input")),
        }
    }
}

pub fn parse_bracket(text: &str) -> Result<Tree, IoError> {
    let mut lx = Lexer { text, pos: 0 };
    lx.skip_ws();
    if lx.peek().is_none() {
        return Ok(Tree::empty());
    }
    let mut labels = Vec::new();
    let mut children: Vec<Vec<usize>> = Vec::new();
    // Open parents with the position of their '('.
    let mut open: Vec<(usize, usize)> = Vec::new();
    loop {
        lx.skip_ws();
        let v = labels.len();
        labels.push(lx.label()?);
        children.push(Vec::new());
        if let Some(&(p, _)) = open.last() {
            children[p].push(v);
        }
        loop {
            lx.skip_ws();
            match lx.peek() {
                Some('(') => {
                    open.push((v, lx.pos));
                    lx.pos += 1;
                    break;
                }
                Some(',') => {
                    if open.is_empty() {
                        return Err(lx.err("',' outside parentheses"));
                    }
                    lx.pos += 1;
                    break;
                }
                Some(')') => {
                    if open.pop().is_none() {
                        return Err(lx.err("unbalanced parentheses: unmatched ')'"));
                    }
                    lx.pos += 1;
                }
                None => {
                    if let Some(&(_, at)) = open.last() {
                        return Err(IoError::Syntax {
                            pos: at,
                            msg: "unbalanced parentheses: unclosed '('".into(),
                        });
                    }
                    return Ok(Tree::from_children(labels, children, 0)?);
                }
                Some(c) => {
                    let msg = if open.is_empty() {
                        format!("unexpected {c:?} after the root")
                    } else {
                        format!("expected ',', '(' or ')', found {c:?}")
                    };
                    return Err(lx.err(msg));
                }
            }
            if open.is_empty() {
                lx.skip_ws();
                if let Some(c) = lx.peek() {
                    return Err(lx.err(format!("unexpected {c:?} after the root")));
                }
                return Ok(Tree::from_children(labels, children, 0)?);
            }
        }
    }
}

pub(crate) fn emit_label(out: &mut String, l: &Label) {
    let s = l.as_str();
    if s.chars().all(is_bare) {
        out.push_str(s);
        return;
    }
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            _ => out.push(c),
        }
    }
    out.push('"');
}

/// Canonical bracket text: no whitespace, children separated by commas.
pub fn emit_bracket(t: &Tree) -> String {
    let mut out = String::new();
    let Some(root) = t.root() else {
        return out;
    };
    // (node, index of the next child to emit)
    let mut stack: Vec<(NodeId, usize)> = vec![(root, 0)];
    emit_label(&mut out, t.label(root));
    while let Some(top) = stack.last_mut() {
        let (v, i) = *top;
        let kids = t.children(v);
        if i == kids.len() {
            if i > 0 {
                out.push(')');
            }
            stack.pop();
            continue;
        }
        top.1 += 1;
        out.push(if i == 0 { '(' } else { ',' });
        emit_label(&mut out, t.label(kids[i]));
        stack.push((kids[i], 0));
    }
    out
}
