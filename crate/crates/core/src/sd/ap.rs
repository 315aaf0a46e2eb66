//! Propagating fixed points along an arithmetic progression.
//!
//! If `f` fixes `a`, `a + d` and `d`, then it fixes every term `a + kd`.
//! Each new term is derived by one of two moves, and both are replayed here
//! against a concrete candidate so that every derived fixing is checked:
//!
//! - forward, `x = a + (k−1)d`, `y = d`: `(x+y)/(x−y) = t_k / t_{k−2}`,
//!   then multiplicativity gives `f(t_k) = t_k`;
//! - backward, `x = a + (k+1)d`, `y = −d` (using oddness):
//!   `(x+y)/(x−y) = t_k / t_{k+2}`, then multiplicativity again.

use std::fmt;

use serde::Serialize;

use super::candidate::SdCandidate;
use crate::error::{Error, Result};
use crate::fields::Field;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    Forward,
    Backward,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PropagationOrder {
    /// All forward steps, then all backward steps.
    #[default]
    ForwardFirst,
    /// Forward `k`, backward `−k+1`, forward `k+1`, …
    Interleaved,
}

/// A term `a + kd` shown to be fixed, with the ratio the move went through.
#[derive(Debug, Clone)]
pub struct ApStep<E> {
    pub k: i64,
    pub term: E,
    pub ratio: E,
    pub direction: Direction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MoveFailure {
    pub k: i64,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct ApPropagation<E> {
    pub derived: Vec<ApStep<E>>,
    /// `d = 0`: every term equals `a` and nothing is derived.
    pub degenerate: bool,
    /// Set when the backward direction reaches the zero term `a + kd = 0`.
    /// The move into that term is replayed but the term is not emitted.
    pub backward_halt: Option<i64>,
    /// Ratio `(x+y)/(x−y)` of the halting move; it is `0`.
    pub halt_ratio: Option<E>,
    pub failures: Vec<MoveFailure>,
}

impl<E: Clone> ApPropagation<E> {
    /// Derived terms ordered by `k`.
    pub fn terms(&self) -> Vec<(i64, E)> {
        let mut out: Vec<(i64, E)> = self.derived.iter().map(|s| (s.k, s.term.clone())).collect();
        out.sort_by_key(|(k, _)| *k);
        out
    }

    pub fn certified(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Engine<'a, F: Field, C: ?Sized> {
    field: &'a F,
    f: &'a C,
    a: F::Elem,
    d: F::Elem,
}

enum MoveOutcome<E> {
    Fixed(ApStep<E>),
    ZeroTerm(E),
    Failed(String),
}

impl<F: Field, C: SdCandidate<F> + ?Sized> Engine<'_, F, C> {
    fn term(&self, k: i64) -> F::Elem {
        let field = self.field;
        field.add(&self.a, &field.mul(&field.from_i64(k), &self.d))
    }

    fn fixes(&self, x: &F::Elem) -> bool {
        self.field.eq(&self.f.apply(self.field, x), x)
    }

    /// Replays one move producing `t_k` from `x`, `y` and the anchor term
    /// `t_anchor` with `t_k = ratio · t_anchor`.
    fn replay(&self, k: i64, x: F::Elem, y: F::Elem, anchor: F::Elem, direction: Direction) -> Result<MoveOutcome<F::Elem>> {
        let field = self.field;
        let f = self.f;
        let target = self.term(k);
        if !self.fixes(&x) {
            return Ok(MoveOutcome::Failed(format!("candidate does not fix x = {x}")));
        }
        if !self.fixes(&y) {
            let what = if direction == Direction::Backward { "oddness fails at -d" } else { "candidate does not fix d" };
            return Ok(MoveOutcome::Failed(format!("{what}: y = {y}")));
        }
        let ratio = field.div(&field.add(&x, &y), &field.sub(&x, &y))?;
        let expected_ratio = field.div(&target, &anchor)?;
        if !field.eq(&ratio, &expected_ratio) {
            return Err(Error::InternalInconsistency(format!(
                "move ratio {ratio} differs from t_k / anchor = {expected_ratio} at k = {k}"
            )));
        }
        let (fx, fy) = (f.apply(field, &x), f.apply(field, &y));
        let rhs = field.div(&field.add(&fx, &fy), &field.sub(&fx, &fy))?;
        let f_ratio = f.apply(field, &ratio);
        if !field.eq(&f_ratio, &rhs) {
            return Ok(MoveOutcome::Failed(format!(
                "equation fails at x = {x}, y = {y}: f(ratio) = {f_ratio}, rhs = {rhs}"
            )));
        }
        if field.is_zero(&target) {
            return Ok(MoveOutcome::ZeroTerm(ratio));
        }
        let f_target = f.apply(field, &target);
        let product = field.mul(&f_ratio, &f.apply(field, &anchor));
        if !field.eq(&f_target, &product) {
            return Ok(MoveOutcome::Failed(format!(
                "multiplicativity fails: f({target}) = {f_target}, f(ratio)·f(anchor) = {product}"
            )));
        }
        if !field.eq(&f_target, &target) {
            return Ok(MoveOutcome::Failed(format!("f({target}) = {f_target} is not fixed")));
        }
        Ok(MoveOutcome::Fixed(ApStep { k, term: target, ratio, direction }))
    }

    fn forward(&self, k: i64) -> Result<MoveOutcome<F::Elem>> {
        if self.field.is_zero(&self.term(k)) {
            return Err(Error::ZeroTermEncountered(k));
        }
        self.replay(k, self.term(k - 1), self.d.clone(), self.term(k - 2), Direction::Forward)
    }

    fn backward(&self, k: i64) -> Result<MoveOutcome<F::Elem>> {
        let neg_d = self.field.neg(&self.d);
        self.replay(k, self.term(k + 1), neg_d, self.term(k + 2), Direction::Backward)
    }
}

/// Derives `a + kd` for `k = 2..=steps` and `k = −1..=−steps`.
///
/// A zero term met going forward is an error. Going backward the
/// propagation stops at it (see [`ApPropagation::backward_halt`]). A move
/// the candidate does not survive is recorded and stops that direction.
pub fn ap_propagate<F: Field, C: SdCandidate<F> + ?Sized>(
    field: &F,
    f: &C,
    a: &F::Elem,
    d: &F::Elem,
    steps: usize,
) -> Result<ApPropagation<F::Elem>> {
    ap_propagate_ordered(field, f, a, d, steps, PropagationOrder::ForwardFirst)
}

pub fn ap_propagate_ordered<F: Field, C: SdCandidate<F> + ?Sized>(
    field: &F,
    f: &C,
    a: &F::Elem,
    d: &F::Elem,
    steps: usize,
    order: PropagationOrder,
) -> Result<ApPropagation<F::Elem>> {
    let mut out = ApPropagation {
        derived: Vec::new(),
        degenerate: false,
        backward_halt: None,
        halt_ratio: None,
        failures: Vec::new(),
    };
    if field.is_zero(d) {
        out.degenerate = true;
        return Ok(out);
    }
    let engine = Engine { field, f, a: a.clone(), d: d.clone() };
    if field.is_zero(a) {
        return Err(Error::ZeroTermEncountered(0));
    }
    if field.is_zero(&engine.term(1)) {
        return Err(Error::ZeroTermEncountered(1));
    }
    for (what, x) in [("a", a.clone()), ("a+d", engine.term(1)), ("d", d.clone())] {
        if !engine.fixes(&x) {
            return Err(Error::Precondition(format!("candidate does not fix {what} = {x}")));
        }
    }

    let steps = steps as i64;
    let schedule: Vec<(Direction, i64)> = match order {
        PropagationOrder::ForwardFirst => (2..=steps)
            .map(|k| (Direction::Forward, k))
            .chain((1..=steps).map(|k| (Direction::Backward, -k)))
            .collect(),
        PropagationOrder::Interleaved => (1..=steps)
            .flat_map(|i| {
                let fw = (i >= 2).then_some((Direction::Forward, i));
                fw.into_iter().chain(std::iter::once((Direction::Backward, -i)))
            })
            .collect(),
    };

    let (mut forward_open, mut backward_open) = (true, true);
    for (direction, k) in schedule {
        let outcome = match direction {
            Direction::Forward if forward_open => engine.forward(k)?,
            Direction::Backward if backward_open => engine.backward(k)?,
            _ => continue,
        };
        match outcome {
            MoveOutcome::Fixed(step) => out.derived.push(step),
            MoveOutcome::ZeroTerm(ratio) => {
                out.backward_halt = Some(k);
                out.halt_ratio = Some(ratio);
                backward_open = false;
            }
            MoveOutcome::Failed(reason) => {
                out.failures.push(MoveFailure { k, reason });
                match direction {
                    Direction::Forward => forward_open = false,
                    Direction::Backward => backward_open = false,
                }
            }
        }
    }
    Ok(out)
}

impl<E: fmt::Display> fmt::Display for ApStep<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dir = match self.direction {
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        };
        write!(f, "k = {}: {} fixed ({dir}, ratio {})", self.k, self.term, self.ratio)
    }
}
