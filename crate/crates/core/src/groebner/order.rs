use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::polyring::Monomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OrderKind {
    Grevlex,
    Lex,
}

/// A monomial order together with a variable ranking. `perm[0]` is the most
/// significant variable; an empty permutation means the ring's own order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    perm: Vec<usize>,
}

impl Default for MonomialOrder {
    fn default() -> Self {
        Self::grevlex()
    }
}

impl MonomialOrder {
    pub fn grevlex() -> Self {
        MonomialOrder {
            kind: OrderKind::Grevlex,
            perm: Vec::new(),
        }
    }

    pub fn lex() -> Self {
        MonomialOrder {
            kind: OrderKind::Lex,
            perm: Vec::new(),
        }
    }

    pub fn with_permutation(kind: OrderKind, perm: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; perm.len()];
        for &i in &perm {
            if i >= perm.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::invalid("variable ranking is not a permutation"));
            }
        }
        Ok(MonomialOrder { kind, perm })
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn is_default_grevlex(&self) -> bool {
        self.kind == OrderKind::Grevlex && self.perm.iter().enumerate().all(|(a, &b)| a == b)
    }

    #[inline]
    fn var(&self, k: usize) -> usize {
        if self.perm.is_empty() {
            k
        } else {
            self.perm[k]
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        let n = ea.len();
        match self.kind {
            OrderKind::Lex => {
                for k in 0..n {
                    let v = self.var(k);
                    if ea[v] != eb[v] {
                        return ea[v].cmp(&eb[v]);
                    }
                }
                Ordering::Equal
            }
            OrderKind::Grevlex => {
                if self.perm.is_empty() {
                    return a.grevlex_cmp(b);
                }
                match a.degree().cmp(&b.degree()) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                for k in (0..n).rev() {
                    let v = self.var(k);
                    if ea[v] != eb[v] {
                        return eb[v].cmp(&ea[v]);
                    }
                }
                Ordering::Equal
            }
        }
    }
}
