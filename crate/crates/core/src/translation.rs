//! Translation of conditions along context morphisms.
//!
//! Statements move by post-composition and connectives are translated
//! homomorphically. A quantifier along `a: K -> M` is moved along
//! `c: K -> H` by the chosen pushout `H -a*-> M_c <-c*- M` of `c` and `a`:
//! the guard is translated along `c` and the body along `c*`.

use alloc::boxed::Box;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::category::pushout;
use crate::condition::{satisfies, Condition, Node, Quantifier};
use crate::graph::{compose, enumerate_morphisms, GraphMorphism};
use crate::sketch::{translate_statement, Sketch};
use crate::{Error, Result};

/// The chosen pushout of `H <-c- K -a-> M`, returned as `(a*, c*)` with
/// `a*: H -> M_c` and `c*: M -> M_c`.
///
/// When `c` is an isomorphism the cospan is `(c^-1 ; a, id_M)`; otherwise
/// the canonical pushout with `H` on the left.
pub fn chosen_pushout(c: &GraphMorphism, a: &GraphMorphism) -> Result<(GraphMorphism, GraphMorphism)> {
    if **c.dom() != **a.dom() {
        return Err(Error::Mismatch("span legs start at different contexts"));
    }
    if c.is_isomorphism() {
        let along = compose(&c.invert()?, a)?;
        return Ok((along, GraphMorphism::identity(a.cod().clone())));
    }
    let po = pushout(c, a)?;
    Ok((po.left, po.right))
}

/// Translates `cond` (over `K`) along `c: K -> H` into a condition over `H`.
pub fn translate_condition(c: &GraphMorphism, cond: &Condition) -> Result<Condition> {
    if **c.dom() != **cond.context() {
        return Err(Error::Mismatch("morphism does not start at the condition's context"));
    }
    let h: Arc<_> = c.cod().clone();
    let node = match cond.node() {
        Node::Stmt(s) => Node::Stmt(translate_statement(c, s)?),
        Node::True => Node::True,
        Node::False => Node::False,
        Node::And(cs) => Node::And(translate_all(c, cs)?),
        Node::Or(cs) => Node::Or(translate_all(c, cs)?),
        Node::Not(child) => Node::Not(Box::new(translate_condition(c, child)?)),
        Node::Exists(q) => Node::Exists(translate_quantifier(c, q)?),
        Node::Forall(q) => Node::Forall(translate_quantifier(c, q)?),
    };
    Ok(Condition::new(h, node))
}

fn translate_all(c: &GraphMorphism, cs: &[Condition]) -> Result<Vec<Condition>> {
    cs.iter().map(|x| translate_condition(c, x)).collect()
}

fn translate_quantifier(c: &GraphMorphism, q: &Quantifier) -> Result<Quantifier> {
    let (shift, moved) = chosen_pushout(c, &q.shift)?;
    Ok(Quantifier {
        guard: Box::new(translate_condition(c, &q.guard)?),
        shift,
        body: Box::new(translate_condition(&moved, &q.body)?),
    })
}

/// Checks `t |= translate(c, cond)` against `c ; t |= cond` for every sample
/// sketch and every `t: H -> G` into it.
pub fn shift_equivalence_oracle(c: &GraphMorphism, cond: &Condition, samples: &[Sketch]) -> Result<bool> {
    let moved = translate_condition(c, cond)?;
    for g in samples {
        for t in enumerate_morphisms(c.cod(), g.context()) {
            let direct = satisfies(&t, g, &moved)?.holds;
            let via = satisfies(&compose(c, &t)?, g, cond)?.holds;
            if direct != via {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
