//! Hyperflows keyed by check word, with the switch move and primitivization.
//!
//! Checks are identified by their support, so a switch can create the sum
//! `j ⊕ j′` of two checks without reference to a particular graph. Mapping
//! back onto a graph requires every such word to be one of its checks, which
//! holds on the all-redundant-checks graph.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{Signed, Zero};
use serde::Serialize;

use super::weighting::{has_cycle, has_hyperflow_pattern, EdgeWeighting};
use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::scalar::Rational;
use crate::tanner::TannerGraph;

/// Hyperflow as a map from check word to (sink, P). Only checks with
/// `P > 0` are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperflowWdg {
    n: usize,
    checks: BTreeMap<BitVector, (usize, Rational)>,
}

/// One switch, for audit trails.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SwitchEvent {
    pub j: String,
    pub i: usize,
    pub j_prime: String,
    pub p: Rational,
    pub created: String,
}

#[derive(Debug, Clone)]
pub struct Primitivized {
    pub wdg: HyperflowWdg,
    pub trace: Vec<SwitchEvent>,
    /// Primitive, acyclic and still a hyperflow for the input LLRs.
    pub verified: bool,
}

impl HyperflowWdg {
    pub fn empty(n: usize) -> Self {
        HyperflowWdg { n, checks: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }

    pub fn checks(&self) -> impl Iterator<Item = (&BitVector, usize, &Rational)> {
        self.checks.iter().map(|(c, (s, p))| (c, *s, p))
    }

    /// Adds `p` to check `word` with the given sink. Fails if the check is
    /// present with another sink or the sink is not in the check.
    pub fn insert(&mut self, word: BitVector, sink: usize, p: Rational) -> Result<()> {
        if word.len() != self.n || !word.get(sink) {
            return Err(Error::structural("sink must be a member of its check"));
        }
        if !p.is_positive() {
            return Err(Error::structural("hyperflow magnitude must be positive"));
        }
        match self.checks.get_mut(&word) {
            Some((s, q)) if *s == sink => *q += &p,
            Some(_) => return Err(Error::structural(format!("check {word} already has a different sink"))),
            None => {
                self.checks.insert(word, (sink, p));
            }
        }
        Ok(())
    }

    /// Reads a weighting of hyperflow form.
    pub fn from_weighting(w: &EdgeWeighting) -> Result<Self> {
        if !has_hyperflow_pattern(w) {
            return Err(Error::structural("weighting is not of hyperflow form"));
        }
        let g = w.graph();
        let mut out = HyperflowWdg::empty(g.n());
        for j in 0..g.m() {
            for (e, &i) in g.check_edges(j).zip(g.check_vars(j)) {
                let v = &w.values()[e];
                if v.is_negative() {
                    out.insert(g.check(j).clone(), i, -v.clone())?;
                }
            }
        }
        Ok(out)
    }

    /// Writes onto `g`; every stored check must be a check of `g`.
    pub fn to_weighting(&self, g: &Arc<TannerGraph>) -> Result<EdgeWeighting> {
        if g.n() != self.n {
            return Err(Error::structural("graph length differs from the hyperflow"));
        }
        let mut w = EdgeWeighting::zero(g.clone());
        for (word, (sink, p)) in &self.checks {
            let j = g.find_check(word).ok_or_else(|| Error::structural(format!("check {word} is not in the graph")))?;
            for &i in g.check_vars(j) {
                w.set(i, j, if i == *sink { -p.clone() } else { p.clone() })?;
            }
        }
        Ok(w)
    }

    pub fn flows(&self) -> Vec<Rational> {
        let (inflow, outflow) = self.in_out();
        outflow.into_iter().zip(inflow).map(|(o, i)| o - i).collect()
    }

    /// Per-variable `(F^in, F^out)`.
    pub fn in_out(&self) -> (Vec<Rational>, Vec<Rational>) {
        let mut inflow = vec![Rational::zero(); self.n];
        let mut outflow = vec![Rational::zero(); self.n];
        for (word, (sink, p)) in &self.checks {
            for i in word.ones_iter() {
                if i == *sink {
                    inflow[i] += p;
                } else {
                    outflow[i] += p;
                }
            }
        }
        (inflow, outflow)
    }

    /// Checks whose sink is `i`, smallest first.
    pub fn in_checks(&self, i: usize) -> Vec<&BitVector> {
        self.checks.iter().filter(|(_, (s, _))| *s == i).map(|(c, _)| c).collect()
    }

    /// Checks containing `i` as a non-sink, smallest first.
    pub fn out_checks(&self, i: usize) -> Vec<&BitVector> {
        self.checks.iter().filter(|(c, (s, _))| *s != i && c.get(i)).map(|(c, _)| c).collect()
    }

    fn degree(&self, i: usize) -> usize {
        self.checks.keys().filter(|c| c.get(i)).count()
    }

    pub fn is_acyclic(&self) -> bool {
        let n = self.n;
        let mut succ = vec![Vec::new(); n + self.checks.len()];
        for (k, (word, (sink, _))) in self.checks.iter().enumerate() {
            for i in word.ones_iter() {
                if i == *sink {
                    succ[n + k].push(i);
                } else {
                    succ[i].push(n + k);
                }
            }
        }
        !has_cycle(&succ)
    }

    /// `F_i < γ_i` for every variable.
    pub fn is_hyperflow_for(&self, gamma: &[Rational]) -> bool {
        gamma.len() == self.n && self.flows().iter().zip(gamma).all(|(f, g)| f < g)
    }

    pub fn is_primitive(&self, gamma: &[Rational]) -> bool {
        if !self.is_hyperflow_for(gamma) {
            return false;
        }
        let (inflow, outflow) = self.in_out();
        let primitive =
            (0..self.n).all(|i| if gamma[i].is_positive() { inflow[i].is_zero() } else { outflow[i].is_zero() });
        if primitive {
            debug_assert!(self.is_acyclic(), "primitive hyperflow with a directed cycle");
        }
        primitive
    }

    /// Moves flow along the path `j → i → j′`: both checks lose
    /// `P = min(P_j, P_j′)` and the check `j ⊕ j′` gains `P` with the sink of
    /// `j′`.
    pub fn switch(&mut self, j: &BitVector, i: usize, j_prime: &BitVector) -> Result<SwitchEvent> {
        let (sj, pj) = self.checks.get(j).cloned().ok_or_else(|| Error::structural(format!("check {j} is not active")))?;
        let (sjp, pjp) =
            self.checks.get(j_prime).cloned().ok_or_else(|| Error::structural(format!("check {j_prime} is not active")))?;
        if sj != i {
            return Err(Error::structural(format!("variable {i} is not the sink of {j}")));
        }
        if sjp == i || !j_prime.get(i) {
            return Err(Error::structural(format!("variable {i} does not feed {j_prime}")));
        }
        if !self.is_acyclic() {
            return Err(Error::structural("switch requires an acyclic hyperflow"));
        }
        let before = cfg!(debug_assertions).then(|| (self.in_out(), self.flows(), self.degree(i)));

        let p = pj.clone().min(pjp.clone());
        let created = j.xor(j_prime);
        assert!(created.get(sjp), "switch cancelled the sink of {j_prime}; impossible in an acyclic hyperflow");
        for (word, old) in [(j, &pj), (j_prime, &pjp)] {
            let rest = old - &p;
            if rest.is_zero() {
                self.checks.remove(word);
            } else {
                self.checks.get_mut(word).expect("present").1 = rest;
            }
        }
        match self.checks.get_mut(&created) {
            Some((s, q)) => {
                assert_eq!(*s, sjp, "switch target {created} already has another sink; impossible in an acyclic hyperflow");
                *q += &p;
            }
            None => {
                self.checks.insert(created.clone(), (sjp, p.clone()));
            }
        }

        if let Some(((in0, out0), f0, deg0)) = before {
            let (in1, out1) = self.in_out();
            let f1 = self.flows();
            debug_assert!(self.is_acyclic(), "switch produced a directed cycle");
            debug_assert!(f1.iter().zip(&f0).all(|(a, b)| a <= b), "switch raised a flow");
            debug_assert!(in1.iter().zip(&in0).all(|(a, b)| a <= b), "switch raised an inflow");
            debug_assert!(out1.iter().zip(&out0).all(|(a, b)| a <= b), "switch raised an outflow");
            debug_assert!(self.degree(i) < deg0, "switch did not reduce the degree of {i}");
        }
        Ok(SwitchEvent { j: j.to_string(), i, j_prime: j_prime.to_string(), p, created: created.to_string() })
    }

    /// Switches until no variable has both inflow and outflow, then drops the
    /// inflow of every variable with `γ_i > 0`.
    pub fn primitivize(mut self, gamma: &[Rational]) -> Result<Primitivized> {
        if gamma.len() != self.n {
            return Err(Error::structural("LLR vector length differs from the hyperflow"));
        }
        if !self.is_hyperflow_for(gamma) || !self.is_acyclic() {
            return Err(Error::structural("primitivize requires an acyclic hyperflow for the given LLRs"));
        }
        let mut trace = Vec::new();
        for i in 0..self.n {
            loop {
                let Some(j) = self.in_checks(i).first().map(|c| (*c).clone()) else { break };
                let Some(jp) = self.out_checks(i).first().map(|c| (*c).clone()) else { break };
                trace.push(self.switch(&j, i, &jp)?);
            }
        }
        for i in 0..self.n {
            if gamma[i].is_positive() {
                self.checks.retain(|_, (s, _)| *s != i);
            }
        }
        let verified = self.is_hyperflow_for(gamma) && self.is_acyclic() && self.is_primitive(gamma);
        Ok(Primitivized { wdg: self, trace, verified })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Variables a b c i g i' x.
    const A: usize = 0;
    const B: usize = 1;
    const C: usize = 2;
    const I: usize = 3;
    const G: usize = 4;
    const IP: usize = 5;
    const X: usize = 6;

    fn word(v: &[usize]) -> BitVector {
        BitVector::from_indices(7, v).unwrap()
    }

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    fn three_checks(pj: Rational, pe: Rational, pjp: Rational) -> HyperflowWdg {
        let mut d = HyperflowWdg::empty(7);
        d.insert(word(&[A, B, C, I]), I, pj).unwrap();
        d.insert(word(&[I, X]), I, pe).unwrap();
        d.insert(word(&[C, I, G, IP]), IP, pjp).unwrap();
        d
    }

    fn gamma(gi: i64) -> Vec<Rational> {
        [1, 1, 2, gi, 1, 1, 1].iter().map(|&v| Rational::from(v)).collect()
    }

    #[test]
    fn switch_leaves_remainder_on_in_check() {
        let mut d = three_checks(r(9, 10), r(7, 10), r(1, 2));
        assert!(d.is_hyperflow_for(&gamma(-1)));
        assert!(!d.is_primitive(&gamma(-1)));
        let ev = d.switch(&word(&[A, B, C, I]), I, &word(&[C, I, G, IP])).unwrap();
        assert_eq!(ev.p, r(1, 2));
        assert_eq!(d.checks.get(&word(&[A, B, C, I])), Some(&(I, r(2, 5))));
        assert_eq!(d.checks.get(&word(&[C, I, G, IP])), None);
        assert_eq!(d.checks.get(&word(&[A, B, G, IP])), Some(&(IP, r(1, 2))));
        assert!(d.is_hyperflow_for(&gamma(-1)));
        // i' still has inflow although gamma is positive there.
        assert!(!d.is_primitive(&gamma(-1)));
    }

    #[test]
    fn switch_leaves_remainder_on_out_check() {
        let mut d = three_checks(r(1, 2), r(3, 10), r(9, 10));
        assert!(d.is_hyperflow_for(&gamma(1)));
        let ev = d.switch(&word(&[A, B, C, I]), I, &word(&[C, I, G, IP])).unwrap();
        assert_eq!(ev.p, r(1, 2));
        assert_eq!(d.checks.get(&word(&[A, B, C, I])), None);
        assert_eq!(d.checks.get(&word(&[C, I, G, IP])), Some(&(IP, r(2, 5))));
        assert_eq!(d.checks.get(&word(&[A, B, G, IP])), Some(&(IP, r(1, 2))));
        assert!(d.is_hyperflow_for(&gamma(1)));
    }

    #[test]
    fn equal_weights_remove_both() {
        let mut d = three_checks(r(1, 2), r(3, 10), r(1, 2));
        d.switch(&word(&[A, B, C, I]), I, &word(&[C, I, G, IP])).unwrap();
        assert_eq!(d.in_checks(I).len(), 1);
        assert!(d.out_checks(I).is_empty());
    }

    #[test]
    fn primitivize_three_check_examples() {
        for (d, g) in [(three_checks(r(9, 10), r(7, 10), r(1, 2)), gamma(-1)), (three_checks(r(1, 2), r(3, 10), r(9, 10)), gamma(1))] {
            let out = d.primitivize(&g).unwrap();
            assert!(out.verified);
            assert!(out.wdg.is_primitive(&g));
            assert!(!out.trace.is_empty());
        }
    }

    #[test]
    fn primitive_input_unchanged() {
        let d = three_checks(r(9, 10), r(7, 10), r(1, 2));
        let out = d.clone().primitivize(&gamma(-1)).unwrap();
        let again = out.wdg.clone().primitivize(&gamma(-1)).unwrap();
        assert!(again.trace.is_empty());
        assert_eq!(again.wdg, out.wdg);
    }

    #[test]
    fn switch_rejects_bad_path() {
        let mut d = three_checks(r(9, 10), r(7, 10), r(1, 2));
        assert!(d.switch(&word(&[C, I, G, IP]), I, &word(&[A, B, C, I])).is_err());
    }

    #[test]
    fn weighting_round_trip() {
        let g = Arc::new(
            TannerGraph::from_rows(7, vec![word(&[A, B, C, I]), word(&[I, X]), word(&[C, I, G, IP]), word(&[A, B, G, IP])])
                .unwrap(),
        );
        let d = three_checks(r(9, 10), r(7, 10), r(1, 2));
        let w = d.to_weighting(&g).unwrap();
        assert_eq!(HyperflowWdg::from_weighting(&w).unwrap(), d);
        assert_eq!(w.flows(), d.flows());
    }
}
