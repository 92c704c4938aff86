//! Asymptotic integer programs over a generator set A and a unit-vector set B.
//!
//! A vector c solves the level-k program exactly when `(I(A)^k : x^c) = I(B)`
//! (or the closure power for the closure variant), so feasibility is
//! membership of I(B) in the associated primes of the level ideal and the
//! optimal modulus is the v-number there — that is the algebraic route.
//! `brute_force` is the independent oracle: it checks the defining
//! biconditional directly over a finite test set of shift vectors d.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::decomp::associated_primes;
use crate::error::{Error, Result};
use crate::filtration::{
    stable_primes, v_function_p, Filtration, QuasiLinearTail, VSample, Window,
};
use crate::ideal::{MonomialIdeal, MonomialPrime};
use crate::newton::NewtonPolyhedron;
use crate::vector::ExponentVector;
use crate::vnum::{for_each_monomial_of_degree, v_at_prime};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IpVariant {
    Power,
    Closure,
}

/// An instance of the level-k program: minimize |c| subject to
/// `c + d` in the level set iff `d` in the B-orthant slab.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IpInstance {
    pub n: usize,
    pub points: Vec<ExponentVector>,
    pub prime: MonomialPrime,
    pub k: u64,
    pub variant: IpVariant,
}

#[derive(Serialize, Deserialize)]
struct IpInstanceJson {
    n: usize,
    #[serde(rename = "A")]
    a: Vec<Vec<u64>>,
    #[serde(rename = "B")]
    b: Vec<usize>,
    k: u64,
    variant: IpVariant,
}

impl IpInstance {
    pub fn new(
        n: usize,
        points: Vec<ExponentVector>,
        prime: MonomialPrime,
        k: u64,
        variant: IpVariant,
    ) -> Result<IpInstance> {
        if points.is_empty() {
            return Err(Error::Unsupported("A must be non-empty".to_string()));
        }
        for p in &points {
            if p.ambient() != n {
                return Err(Error::DimensionMismatch {
                    left: n,
                    right: p.ambient(),
                });
            }
            if p.is_zero() {
                return Err(Error::Unsupported(
                    "the zero vector is not allowed in A".to_string(),
                ));
            }
        }
        if prime.ambient() != n {
            return Err(Error::DimensionMismatch {
                left: n,
                right: prime.ambient(),
            });
        }
        if k == 0 {
            return Err(Error::Unsupported("k must be at least 1".to_string()));
        }
        Ok(IpInstance {
            n,
            points,
            prime,
            k,
            variant,
        })
    }

    /// Instance JSON: `{"n":…, "A":[[…]], "B":[indices], "k":…, "variant":…}`
    /// with 1-based indices in B.
    pub fn from_json(input: &str) -> Result<IpInstance> {
        let raw: IpInstanceJson = serde_json::from_str(input).map_err(|e| Error::Parse {
            pos: e.column().saturating_sub(1),
            msg: e.to_string(),
        })?;
        let points = raw
            .a
            .into_iter()
            .map(|v| {
                if v.len() != raw.n {
                    return Err(Error::Parse {
                        pos: 0,
                        msg: format!("A entry has {} coordinates, expected {}", v.len(), raw.n),
                    });
                }
                ExponentVector::new(v).map_err(|_| Error::Parse {
                    pos: 0,
                    msg: "total degree too large".to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let prime = MonomialPrime::from_one_based(raw.n, &raw.b)?;
        IpInstance::new(raw.n, points, prime, raw.k, raw.variant)
    }

    pub fn to_json(&self) -> String {
        let raw = IpInstanceJson {
            n: self.n,
            a: self
                .points
                .iter()
                .map(|p| p.entries().to_vec())
                .collect(),
            b: self.prime.support().iter().map(|&i| i + 1).collect(),
            k: self.k,
            variant: self.variant,
        };
        serde_json::to_string(&raw).expect("instance serialization is infallible")
    }

    pub fn base_ideal(&self) -> Result<MonomialIdeal> {
        MonomialIdeal::new(self.n, self.points.clone())
    }

    pub fn level_ideal(&self) -> Result<MonomialIdeal> {
        match self.variant {
            IpVariant::Power => self.base_ideal()?.power(self.k),
            IpVariant::Closure => {
                NewtonPolyhedron::new(self.n, self.points.clone())?.closure_power(self.k)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IpSolution {
    pub c: ExponentVector,
    pub modulus: u64,
    pub optimal: bool,
}

/// Algebraic route: feasible iff I(B) is an associated prime of the level
/// ideal; the v-number witness there is an optimal solution.
pub fn solve(inst: &IpInstance) -> Result<Option<IpSolution>> {
    let level = inst.level_ideal()?;
    let ass = associated_primes(&level)?;
    if !ass.contains(&inst.prime) {
        return Ok(None);
    }
    let v = v_at_prime(&level, &inst.prime, &ass)?;
    Ok(Some(IpSolution {
        c: v.witness,
        modulus: v.value,
        optimal: true,
    }))
}

#[derive(Debug, Clone, Serialize)]
pub struct BruteForceOutcome {
    pub solution: Option<IpSolution>,
    #[serde(rename = "boxLimited")]
    pub box_limited: bool,
}

/// Brute-force oracle: enumerates candidates c inside the box in increasing
/// modulus order and verifies the defining biconditional over every shift d
/// with |d| <= maxdeg(A) * k + |c|.
///
/// That test set suffices: a violating pair can always be shrunk. If
/// `c + d` lies in the level set with d outside the B-slab, replacing d by
/// `max(g - c, 0)` for a witnessing generator g keeps both properties and
/// has modulus at most maxdeg(A) * k; if d lies in the B-slab with `c + d`
/// outside the level set, the single unit vector supporting d already
/// violates, because the level set is upward closed.
pub fn brute_force(inst: &IpInstance, caps: &[u64]) -> Result<BruteForceOutcome> {
    if caps.len() != inst.n {
        return Err(Error::DimensionMismatch {
            left: inst.n,
            right: caps.len(),
        });
    }
    let level = inst.level_ideal()?;
    let np = match inst.variant {
        IpVariant::Closure => Some(NewtonPolyhedron::new(inst.n, inst.points.clone())?),
        IpVariant::Power => None,
    };
    let member = |u: &ExponentVector| -> Result<bool> {
        match &np {
            Some(np) => np.facet_membership(u.entries(), inst.k),
            None => level.contains(u),
        }
    };
    let max_deg: u64 = inst.points.iter().map(|p| p.degree()).max().unwrap();

    let mut candidates: Vec<ExponentVector> = Vec::new();
    let mut cur = vec![0u64; inst.n];
    collect_box(&mut cur, 0, caps, &mut candidates);
    candidates.sort_by_key(|c| (c.degree(), c.clone()));

    let b_support: Vec<usize> = inst.prime.support().iter().copied().collect();
    for c in candidates {
        let bound = max_deg
            .checked_mul(inst.k)
            .and_then(|x| x.checked_add(c.degree()))
            .ok_or(Error::ExponentOverflow)?;
        let mut holds = true;
        'degrees: for deg in 0..=bound {
            let mut violated = false;
            for_each_monomial_of_degree(inst.n, deg, &mut |d| {
                if violated {
                    return;
                }
                let in_b = b_support.iter().any(|&i| d[i] >= 1);
                let shifted: Vec<u64> = c
                    .entries()
                    .iter()
                    .zip(d)
                    .map(|(a, b)| a.saturating_add(*b))
                    .collect();
                let shifted = ExponentVector::new(shifted).expect("bounded test set");
                let in_level = member(&shifted).expect("membership is total here");
                if in_level != in_b {
                    violated = true;
                }
            });
            if violated {
                holds = false;
                break 'degrees;
            }
        }
        if holds {
            let modulus = c.degree();
            return Ok(BruteForceOutcome {
                solution: Some(IpSolution {
                    c,
                    modulus,
                    optimal: true,
                }),
                box_limited: false,
            });
        }
    }
    Ok(BruteForceOutcome {
        solution: None,
        box_limited: true,
    })
}

fn collect_box(cur: &mut Vec<u64>, pos: usize, caps: &[u64], out: &mut Vec<ExponentVector>) {
    if pos == caps.len() {
        out.push(ExponentVector::new(cur.clone()).expect("box vectors are bounded"));
        return;
    }
    for v in 0..=caps[pos] {
        cur[pos] = v;
        collect_box(cur, pos + 1, caps, out);
    }
    cur[pos] = 0;
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LawOutcome {
    /// The program is eventually feasible and the optimal modulus follows
    /// the fitted quasi-linear law.
    Law {
        tail: QuasiLinearTail,
        samples: Vec<VSample>,
    },
    /// I(B) is not among the stable primes: infeasible for all large k.
    EventuallyInfeasible {
        #[serde(rename = "stablePrimes")]
        stable_primes: BTreeSet<MonomialPrime>,
        examined: (usize, usize),
    },
    NotStabilized { warnings: Vec<String> },
}

/// Asymptotic law of the optimal modulus: checks eventual feasibility via
/// the stable primes of the filtration and fits the per-level v-numbers.
pub fn asymptotic_law(
    n: usize,
    points: Vec<ExponentVector>,
    prime: MonomialPrime,
    variant: IpVariant,
    window: Window,
) -> Result<LawOutcome> {
    let probe = IpInstance::new(n, points, prime.clone(), 1, variant)?;
    let base = probe.base_ideal()?;
    let f = match variant {
        IpVariant::Power => Filtration::powers(base),
        IpVariant::Closure => Filtration::closure_powers(base)?,
    };
    let sp = stable_primes(&f, window)?;
    let Some(stable) = sp.stable else {
        return Ok(LawOutcome::NotStabilized {
            warnings: sp.warnings,
        });
    };
    if !stable.primes.contains(&prime) {
        return Ok(LawOutcome::EventuallyInfeasible {
            stable_primes: stable.primes,
            examined: (stable.stabilized_at, window.kmax),
        });
    }
    let vfp = v_function_p(&f, &prime, window)?;
    match vfp.tail {
        Some(tail) => Ok(LawOutcome::Law {
            tail,
            samples: vfp.samples,
        }),
        None => Ok(LawOutcome::NotStabilized {
            warnings: vfp.warnings,
        }),
    }
}
