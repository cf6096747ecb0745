//! A small boolean expression tree: the next-state relations and the
//! goal predicate are built as values, rendered to SMV syntax, and kept
//! on the model so tests can evaluate exactly what was emitted.

use std::collections::HashMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Const(bool),
    Var(String),
    Not(Box<Expr>),
    And(Vec<Expr>),
    Or(Vec<Expr>),
    Xor(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn var(name: impl Into<String>) -> Self {
        Expr::Var(name.into())
    }

    pub fn negated(self) -> Self {
        Expr::Not(Box::new(self))
    }

    pub fn xor(self, other: Expr) -> Self {
        Expr::Xor(Box::new(self), Box::new(other))
    }

    /// Conjunction that collapses the empty and singleton cases.
    pub fn and(mut terms: Vec<Expr>) -> Self {
        match terms.len() {
            0 => Expr::Const(true),
            1 => terms.pop().unwrap(),
            _ => Expr::And(terms),
        }
    }

    pub fn or(mut terms: Vec<Expr>) -> Self {
        match terms.len() {
            0 => Expr::Const(false),
            1 => terms.pop().unwrap(),
            _ => Expr::Or(terms),
        }
    }

    /// SMV concrete syntax. Compound operands are parenthesized, so
    /// operator precedence never matters.
    pub fn render(&self) -> String {
        match self {
            Expr::Const(true) => "TRUE".into(),
            Expr::Const(false) => "FALSE".into(),
            Expr::Var(name) => name.clone(),
            Expr::Not(inner) => match inner.as_ref() {
                Expr::Var(name) => format!("!{name}"),
                other => format!("!({})", other.render()),
            },
            Expr::And(terms) => terms
                .iter()
                .map(Self::render_operand)
                .collect::<Vec<_>>()
                .join(" & "),
            Expr::Or(terms) => terms
                .iter()
                .map(Self::render_operand)
                .collect::<Vec<_>>()
                .join(" | "),
            Expr::Xor(a, b) => format!(
                "{} xor {}",
                Self::render_operand(a),
                Self::render_operand(b)
            ),
        }
    }

    fn render_operand(expr: &Expr) -> String {
        match expr {
            Expr::Const(_) | Expr::Var(_) | Expr::Not(_) => expr.render(),
            compound => format!("({})", compound.render()),
        }
    }

    /// Evaluates under a variable assignment; `defines` are resolved by
    /// name first, so the tree can reference emitted DEFINE symbols.
    pub fn eval(
        &self,
        env: &HashMap<String, bool>,
        defines: &HashMap<String, Expr>,
    ) -> Result<bool, String> {
        match self {
            Expr::Const(v) => Ok(*v),
            Expr::Var(name) => {
                if let Some(&v) = env.get(name) {
                    Ok(v)
                } else if let Some(expr) = defines.get(name) {
                    expr.eval(env, defines)
                } else {
                    Err(name.clone())
                }
            }
            Expr::Not(inner) => Ok(!inner.eval(env, defines)?),
            Expr::And(terms) => {
                for t in terms {
                    if !t.eval(env, defines)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Expr::Or(terms) => {
                for t in terms {
                    if t.eval(env, defines)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            Expr::Xor(a, b) => Ok(a.eval(env, defines)? ^ b.eval(env, defines)?),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_smv_syntax() {
        let e = Expr::var("s0_0").xor(Expr::and(vec![
            Expr::var("tgt_is_0"),
            Expr::or(vec![Expr::var("g2").negated(), Expr::var("s0_1")]),
        ]));
        assert_eq!(e.render(), "s0_0 xor (tgt_is_0 & (!g2 | s0_1))");
    }

    #[test]
    fn empty_conjunction_is_true() {
        assert_eq!(Expr::and(vec![]).render(), "TRUE");
        assert_eq!(Expr::or(vec![]).render(), "FALSE");
    }

    #[test]
    fn eval_resolves_defines() {
        let mut env = HashMap::new();
        env.insert("g0".to_string(), true);
        let mut defines = HashMap::new();
        defines.insert("tgt_is_1".to_string(), Expr::var("g0"));
        let e = Expr::var("tgt_is_1").negated();
        assert_eq!(e.eval(&env, &defines), Ok(false));
        let missing = Expr::var("nope");
        assert_eq!(missing.eval(&env, &defines), Err("nope".to_string()));
    }
}
