//! Emission of the synthesis transition system as an SMV model.
//!
//! The model composes two parts synchronously. Gate-selection bits
//! `g0..g{k-1}` (the packed gate code, msb first: target field then
//! control flags) are re-chosen freely every step. For every input word
//! `w` there is one transition instance of `n` state bits `s{w}_0 ..
//! s{w}_{n-1}`, initialized to the bits of `w`; its next-state relation
//! flips the bit selected by the target field exactly when every
//! flagged control line carries 1. Reaching the state where instance
//! `w` holds the bits of `goal[w]` for all words means the gate
//! sequence chosen along the way realizes the goal, so the emitted
//! specification asserts that state is unreachable and a counterexample
//! trace is a synthesis.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::encoding::{code_width, target_field_width};
use crate::perm::Permutation;

use super::expr::Expr;
use super::{SmvError, SpecLogic, MAX_SMV_LINES};

/// An emitted model plus the expression trees it was rendered from.
#[derive(Debug, Clone)]
pub struct SmvModel {
    n: usize,
    goal: Permutation,
    spec_logic: SpecLogic,
    text: String,
    gate_vars: Vec<String>,
    defines: HashMap<String, Expr>,
    next_exprs: Vec<Vec<Expr>>,
    goal_expr: Expr,
}

impl SmvModel {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn goal(&self) -> &Permutation {
        &self.goal
    }

    pub fn spec_logic(&self) -> SpecLogic {
        self.spec_logic
    }

    /// The complete model source.
    pub fn text(&self) -> &str {
        &self.text
    }

    /// Gate-bit variable names, msb of the code first.
    pub fn gate_vars(&self) -> &[String] {
        &self.gate_vars
    }

    /// State-bit variable name for line `i` of word instance `w`.
    pub fn state_var(w: u16, i: usize) -> String {
        format!("s{w}_{i}")
    }

    /// Next-state expression of line `i` in word instance `w`, exactly
    /// as emitted.
    pub fn next_expr(&self, w: u16, i: usize) -> &Expr {
        &self.next_exprs[w as usize][i]
    }

    /// The goal predicate, exactly as emitted.
    pub fn goal_expr(&self) -> &Expr {
        &self.goal_expr
    }

    /// Evaluates an emitted expression under an assignment of gate and
    /// state bits, resolving DEFINE symbols.
    pub fn eval(&self, expr: &Expr, env: &HashMap<String, bool>) -> Result<bool, SmvError> {
        expr.eval(env, &self.defines)
            .map_err(SmvError::UnknownVariable)
    }
}

/// Builds the model for `goal` with the requested specification logic.
pub fn emit_model(
    n: usize,
    goal: &Permutation,
    spec_logic: SpecLogic,
) -> Result<SmvModel, SmvError> {
    if n == 0 || n > MAX_SMV_LINES {
        return Err(SmvError::LineCountOutOfRange(n));
    }
    if goal.n() != n {
        return Err(SmvError::Model(
            crate::perm::ModelError::DimensionMismatch {
                left: n,
                right: goal.n(),
            },
        ));
    }

    let tw = target_field_width(n);
    let k = code_width(n);
    let gate_vars: Vec<String> = (0..k).map(|i| format!("g{i}")).collect();
    let words = goal.word_count() as u16;

    // DEFINE symbols: one target-match predicate per line.
    let mut defines = HashMap::new();
    let mut define_order: Vec<String> = Vec::new();
    for line in 0..n {
        let name = format!("tgt_is_{line}");
        let terms = (0..tw)
            .map(|b| {
                let var = Expr::var(&gate_vars[b]);
                if line >> (tw - 1 - b) & 1 == 1 {
                    var
                } else {
                    var.negated()
                }
            })
            .collect();
        defines.insert(name.clone(), Expr::and(terms));
        define_order.push(name);
    }

    // Next-state relation per word instance and line.
    let mut next_exprs: Vec<Vec<Expr>> = Vec::with_capacity(words as usize);
    for w in 0..words {
        let mut per_line = Vec::with_capacity(n);
        for line in 0..n {
            let mut ctrl_terms = vec![Expr::var(format!("tgt_is_{line}"))];
            for j in 0..n - 1 {
                let flagged_line = if j < line { j } else { j + 1 };
                ctrl_terms.push(Expr::or(vec![
                    Expr::var(&gate_vars[tw + j]).negated(),
                    Expr::var(SmvModel::state_var(w, flagged_line)),
                ]));
            }
            per_line.push(Expr::var(SmvModel::state_var(w, line)).xor(Expr::and(ctrl_terms)));
        }
        next_exprs.push(per_line);
    }

    // Goal predicate: every word instance holds the bits of its image.
    let goal_terms = (0..words)
        .flat_map(|w| {
            let image = goal.image(w);
            (0..n).map(move |line| {
                let var = Expr::var(SmvModel::state_var(w, line));
                if image >> (n - 1 - line) & 1 == 1 {
                    var
                } else {
                    var.negated()
                }
            })
        })
        .collect();
    let goal_expr = Expr::and(goal_terms);
    defines.insert("goal_reached".to_string(), goal_expr.clone());
    define_order.push("goal_reached".to_string());

    // Render.
    let mut text = String::new();
    let _ = writeln!(text, "-- Bounded-reachability model for MCT gate synthesis");
    let _ = writeln!(text, "-- lines: {n}, words: {words}, goal: {goal}");
    let _ = writeln!(
        text,
        "-- A counterexample to the specification is an optimal gate sequence."
    );
    let _ = writeln!(text, "MODULE main");
    let _ = writeln!(text, "VAR");
    if k > 0 {
        let _ = writeln!(
            text,
            "  -- gate selection: {tw} target bit(s), {} control flag(s)",
            k - tw
        );
        for g in &gate_vars {
            let _ = writeln!(text, "  {g} : boolean;");
        }
    } else {
        let _ = writeln!(
            text,
            "  -- one line: the only gate is the NOT, no selection bits"
        );
    }
    for w in 0..words {
        let _ = writeln!(text, "  -- transition instance for word {w}");
        for line in 0..n {
            let _ = writeln!(text, "  {} : boolean;", SmvModel::state_var(w, line));
        }
    }
    let _ = writeln!(text, "DEFINE");
    for name in &define_order {
        let _ = writeln!(text, "  {name} := {};", defines[name].render());
    }
    let _ = writeln!(text, "ASSIGN");
    for g in &gate_vars {
        // Each bit freely flips or stays every step; the initial value
        // is likewise unconstrained.
        let _ = writeln!(text, "  next({g}) := {{FALSE, TRUE}};");
    }
    for w in 0..words {
        for (line, next) in next_exprs[w as usize].iter().enumerate() {
            let var = SmvModel::state_var(w, line);
            let init = if w >> (n - 1 - line) & 1 == 1 {
                "TRUE"
            } else {
                "FALSE"
            };
            let _ = writeln!(text, "  init({var}) := {init};");
            let _ = writeln!(text, "  next({var}) := {};", next.render());
        }
    }
    if (1usize << tw) > n {
        // Non-power-of-two line counts leave dead target codes; rule
        // them out so traces always decode.
        let valid = Expr::or(
            (0..n)
                .map(|line| Expr::var(format!("tgt_is_{line}")))
                .collect(),
        );
        let _ = writeln!(text, "INVAR");
        let _ = writeln!(text, "  {};", valid.render());
    }
    match spec_logic {
        SpecLogic::Ltl => {
            let _ = writeln!(text, "LTLSPEC !(F goal_reached)");
        }
        SpecLogic::Ctl => {
            let _ = writeln!(text, "CTLSPEC !(EF goal_reached)");
        }
    }

    Ok(SmvModel {
        n,
        goal: goal.clone(),
        spec_logic,
        text,
        gate_vars,
        defines,
        next_exprs,
        goal_expr,
    })
}
