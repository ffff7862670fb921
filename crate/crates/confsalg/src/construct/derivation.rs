//! Forcing from the derivation identities.
//!
//! An element `a = u∘v` of `A` acts by `•` as a derivation of `∘` (H3), so
//! on `F = V∘V∘V` the operator `a•` is determined by the action of `V`:
//! `a•y = −y•a` for `y ∈ V` and
//! `a•(x∘y∘z) = (a•x)∘y∘z + x∘((a•y)∘z) + x∘y∘(a•z)`.
//! The operator must be well defined on `F` (linear relations among the
//! triple products are respected), and (H4) `u∘(v•f) = (u∘v)•f + (u,v) f`
//! must hold. Every discrepancy is an element that vanishes in any algebra
//! with the given V-action, so it is forced into the kernel.

use std::collections::HashMap;

use super::{ConstructError, GradedModel};
use crate::algebra::{w_f, w_v, Element};
use crate::clifford::CliffordElement;
use crate::coords::Coords;

impl GradedModel {
    pub(super) fn derivation_violations(&self) -> Result<Vec<CliffordElement>, ConstructError> {
        let d = self.model.d();
        let n = self.pieces.len();
        let mut lower = vec![vec![Element::zero(); n]; d];
        let mut upper = vec![vec![Element::zero(); n]; d];
        for g in 0..d {
            for x in 0..n {
                for (w, e) in self.act(g, x)? {
                    if w < self.pieces[x].weight {
                        lower[g][x] = e;
                    } else {
                        upper[g][x] = e;
                    }
                }
            }
        }
        let circ = |g: usize, e: &Element| e.linear_map(|k| lower[g][*k].clone());
        let bullet = |g: usize, e: &Element| e.linear_map(|k| upper[g][*k].clone());
        // V pieces are the generators, in order.
        let vpos: Vec<usize> = (0..n).filter(|&k| self.pieces[k].weight == w_v()).collect();
        let gen_of: HashMap<usize, usize> = vpos.iter().enumerate().map(|(g, &k)| (k, g)).collect();
        // w∘e for a V-element w.
        let circ_v = |w: &Element, e: &Element| {
            let mut out = Element::zero();
            for (k, c) in w.iter() {
                out = out.add_scaled(c, &circ(gen_of[k], e));
            }
            out
        };
        let gen = |g: usize| Element::basis(vpos[g]);
        let fpos: Vec<usize> = (0..n).filter(|&k| self.pieces[k].weight == w_f()).collect();

        let mut forced: Vec<Element> = Vec::new();
        for p in 0..d {
            for q in 0..d {
                let a = circ(p, &gen(q));
                let a_on_v: Vec<Element> = (0..d).map(|r| bullet(r, &a).neg()).collect();
                let mut triples: Coords = Coords::new();
                let mut images: Vec<Element> = Vec::new();
                for y in 0..d {
                    for z in y + 1..d {
                        let yz = circ(y, &gen(z));
                        let a_yz = circ_v(&a_on_v[y], &gen(z)).add(&circ(y, &a_on_v[z]));
                        for x in 0..d {
                            let t = circ(x, &yz);
                            let image = circ_v(&a_on_v[x], &yz).add(&circ(x, &a_yz));
                            match triples.insert(&t) {
                                Ok(_) => images.push(image),
                                Err(combo) => {
                                    let mut r = image;
                                    for (j, c) in combo.iter() {
                                        r = r.add_scaled(&-c, &images[*j]);
                                    }
                                    forced.push(r);
                                }
                            }
                        }
                    }
                }
                let ip = self.model.ip(p, q);
                for &f in &fpos {
                    let ef = Element::basis(f);
                    let Some(combo) = triples.express(&ef) else { continue };
                    let mut a_f = Element::zero();
                    for (j, c) in combo.iter() {
                        a_f = a_f.add_scaled(c, &images[*j]);
                    }
                    let lhs = circ(p, &bullet(q, &ef));
                    let rhs = a_f.add_scaled(&ip, &ef);
                    forced.push(lhs.sub(&rhs));
                }
            }
        }
        Ok(forced.iter().filter(|e| !e.is_zero()).map(|e| self.lift(e)).collect())
    }
}
