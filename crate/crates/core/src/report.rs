//! Serializable reports and their human-readable rendering.

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use crate::criteria::{intclosed_h_one, Microinvariants, PullbackData};
use crate::error::Result;
use crate::filtration::RRReport;
use crate::ideal::RelativeIdeal;
use crate::notation::{format_set, join};
use crate::oracle;
use crate::semigroup::NumericalSemigroup;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemigroupJson {
    pub gens: Vec<i64>,
    pub conductor: i64,
    pub multiplicity: i64,
}

impl From<&NumericalSemigroup> for SemigroupJson {
    fn from(s: &NumericalSemigroup) -> Self {
        Self {
            gens: s.gens().to_vec(),
            conductor: s.conductor(),
            multiplicity: s.multiplicity(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealJson {
    pub ambient: Vec<i64>,
    pub gens: Vec<i64>,
    pub sporadic: Vec<i64>,
    pub tail: i64,
}

impl From<&RelativeIdeal> for IdealJson {
    fn from(e: &RelativeIdeal) -> Self {
        Self {
            ambient: e.ambient().gens().to_vec(),
            gens: e.gens().to_vec(),
            sporadic: e.sporadic().to_vec(),
            tail: e.tail(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PullbackJson {
    #[serde(rename = "T")]
    pub t: Vec<i64>,
    #[serde(rename = "F_gens")]
    pub f_gens: Vec<i64>,
    pub modulus: i64,
    #[serde(rename = "apery_F")]
    pub apery_f: Vec<i64>,
    #[serde(rename = "apery_BF")]
    pub apery_bf: Vec<i64>,
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub h_is_one: bool,
}

impl From<&PullbackData> for PullbackJson {
    fn from(p: &PullbackData) -> Self {
        Self {
            t: p.t.gens().to_vec(),
            f_gens: p.f.gens().to_vec(),
            modulus: p.modulus(),
            apery_f: p.micro.apery.entries().to_vec(),
            apery_bf: p.micro.apery_blowup.entries().to_vec(),
            a: p.micro.a.clone(),
            b: p.micro.b.clone(),
            h_is_one: p.verdict,
        }
    }
}

/// Everything `rrsg semigroup` prints.
#[derive(Clone, Debug, Serialize)]
pub struct SemigroupReport {
    #[serde(flatten)]
    pub summary: SemigroupJson,
    pub frobenius: i64,
    pub gaps: Vec<i64>,
    pub apery: Vec<i64>,
    pub blowup: Vec<i64>,
    pub micro_a: Vec<i64>,
    pub micro_b: Vec<i64>,
    pub gr_cm: bool,
}

impl SemigroupReport {
    pub fn new(s: &NumericalSemigroup) -> Result<Self> {
        let micro = Microinvariants::of_semigroup(s)?;
        Ok(Self {
            summary: s.into(),
            frobenius: s.frobenius(),
            gaps: s.gaps(),
            apery: s.apery_table().entries().to_vec(),
            blowup: s.blowup().gens().to_vec(),
            gr_cm: micro.is_cm(),
            micro_a: micro.a,
            micro_b: micro.b,
        })
    }

    pub fn render(&self, ascii: bool) -> String {
        let mut out = String::new();
        let s = &self.summary;
        let _ = writeln!(out, "semigroup    <{}>", join(&s.gens));
        let _ = writeln!(out, "multiplicity {}", s.multiplicity);
        let _ = writeln!(out, "conductor    {}", s.conductor);
        let _ = writeln!(out, "frobenius    {}", self.frobenius);
        let _ = writeln!(out, "gaps         {{{}}}", join(&self.gaps));
        let _ = writeln!(out, "apery        {}", bracket(&self.apery));
        let _ = writeln!(out, "blow-up      <{}>", join(&self.blowup));
        let _ = writeln!(out, "a            {}", bracket(&self.micro_a));
        let _ = writeln!(out, "b            {}", bracket(&self.micro_b));
        let _ = writeln!(out, "gr CM        {}", self.gr_cm);
        if ascii {
            out
        } else {
            out.replace('<', "⟨").replace('>', "⟩")
        }
    }
}

/// Everything `rrsg ideal` prints.
#[derive(Clone, Debug, Serialize)]
pub struct IdealReport {
    #[serde(flatten)]
    pub ideal: IdealJson,
    pub multiplicity: i64,
    pub apery: Vec<i64>,
    pub integral_closure_gap: Vec<i64>,
    pub blowup_gens: Vec<i64>,
    pub gr_module_cm: bool,
}

impl IdealReport {
    pub fn new(e: &RelativeIdeal) -> Result<Self> {
        let micro = Microinvariants::of_ideal(e)?;
        let gap = if e.is_integral() {
            closure_gap(e)?
        } else {
            Vec::new()
        };
        Ok(Self {
            ideal: e.into(),
            multiplicity: e.multiplicity(),
            apery: micro.apery.entries().to_vec(),
            integral_closure_gap: gap,
            blowup_gens: e.blowup()?.gens().to_vec(),
            gr_module_cm: micro.is_cm(),
        })
    }

    pub fn render(&self, ascii: bool) -> String {
        let mut out = String::new();
        let i = &self.ideal;
        let _ = writeln!(
            out,
            "ideal        {{{}}}+<{}>",
            join(&i.gens),
            join(&i.ambient)
        );
        let _ = writeln!(
            out,
            "elements     {}",
            format_set(&i.sporadic, i.tail, ascii)
        );
        let _ = writeln!(out, "multiplicity {}", self.multiplicity);
        let _ = writeln!(out, "apery        {}", bracket(&self.apery));
        let _ = writeln!(
            out,
            "bar(E) \\ E   {{{}}}",
            join(&self.integral_closure_gap)
        );
        let _ = writeln!(out, "blow-up gens {{{}}}", join(&self.blowup_gens));
        let _ = writeln!(out, "gr module CM {}", self.gr_module_cm);
        out
    }
}

fn bracket(v: &[i64]) -> String {
    format!("[{}]", join(v))
}

/// `bar(E) \ E`, a finite set.
pub fn closure_gap(e: &RelativeIdeal) -> Result<Vec<i64>> {
    let bar = e.integral_closure()?;
    Ok(bar
        .elements_in(bar.multiplicity(), e.tail())
        .filter(|&z| !e.contains(z))
        .collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct CriteriaFlags {
    pub prop1: bool,
    pub suff: bool,
    pub thm_comp: bool,
    /// `None` when the ideal is not integrally closed.
    pub intclosed_h_one: Option<bool>,
    pub stable: bool,
    pub integral_closure_gap: Vec<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleSummary {
    pub mismatches: Vec<String>,
}

/// Full pipeline output for one ideal.
#[derive(Clone, Debug, Serialize)]
pub struct AnalysisReport {
    pub semigroup: SemigroupJson,
    pub ideal: IdealJson,
    pub rr: RRReport,
    pub pullback: PullbackJson,
    pub criteria: CriteriaFlags,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSummary>,
    pub timing_ms: f64,
}

impl AnalysisReport {
    pub fn analyze(e: &RelativeIdeal, with_oracle: bool) -> Result<Self> {
        let start = Instant::now();
        let rr = RRReport::compute(e)?;
        let pullback = PullbackData::new(e)?;
        let criteria = CriteriaFlags {
            prop1: rr.prop1_applies,
            suff: rr.suff_applies,
            thm_comp: pullback.verdict,
            intclosed_h_one: intclosed_h_one(e)?,
            stable: rr.r <= 1,
            integral_closure_gap: closure_gap(e)?,
        };
        let oracle = if with_oracle {
            Some(OracleSummary {
                mismatches: oracle::cross_check_closures(e)?,
            })
        } else {
            None
        };
        Ok(Self {
            semigroup: e.ambient().into(),
            ideal: e.into(),
            pullback: (&pullback).into(),
            rr,
            criteria,
            oracle,
            timing_ms: start.elapsed().as_secs_f64() * 1e3,
        })
    }

    /// Violated consistency checks; empty for a sound report.
    pub fn breaches(&self) -> Vec<String> {
        let mut out = self.rr.breaches();
        let h_one = self.rr.h == 1;
        if self.criteria.thm_comp != h_one {
            out.push(format!(
                "microinvariant verdict {} disagrees with h={}",
                self.criteria.thm_comp, self.rr.h
            ));
        }
        if let Some(v) = self.criteria.intclosed_h_one {
            if v != h_one {
                out.push("integrally-closed criterion disagrees with h".into());
            }
        }
        if self.criteria.stable && !h_one {
            out.push("stable ideal with h != 1".into());
        }
        let p = &self.pullback;
        if p.a.iter().zip(&p.b).any(|(a, b)| a < b) {
            out.push("a_i < b_i for some residue".into());
        }
        if let Some(o) = &self.oracle {
            out.extend(o.mismatches.iter().cloned());
        }
        out
    }

    pub fn render(&self, ascii: bool) -> String {
        let mut out = String::new();
        let rr = &self.rr;
        let i = &self.ideal;
        let s = &self.semigroup;
        let _ = writeln!(
            out,
            "semigroup    <{}>  (m={}, c={})",
            join(&s.gens),
            s.multiplicity,
            s.conductor
        );
        let _ = writeln!(out, "ideal        {{{}}}+S", join(&i.gens));
        let _ = writeln!(
            out,
            "E            {}",
            format_set(&i.sporadic, i.tail, ascii)
        );
        let _ = writeln!(out, "e={}  r={}  h={}  l={}", rr.e, rr.r, rr.h, rr.l);
        let _ = writeln!(out, "powers");
        for pc in &rr.powers {
            let _ = writeln!(
                out,
                "  m={:<3} {}E = {}   closure = {}   {}",
                pc.m,
                pc.m,
                pc.power.to_set_string(ascii),
                pc.closure.to_set_string(ascii),
                if pc.closed { "closed" } else { "OPEN" }
            );
        }
        let p = &self.pullback;
        let _ = writeln!(
            out,
            "pullback     T=<{}>  F gens {{{}}}  modulus {}",
            join(&p.t),
            join(&p.f_gens),
            p.modulus
        );
        let _ = writeln!(out, "  Ap(F)      {}", bracket(&p.apery_f));
        let _ = writeln!(out, "  Ap(B(F))   {}", bracket(&p.apery_bf));
        let _ = writeln!(out, "  a          {}", bracket(&p.a));
        let _ = writeln!(out, "  b          {}", bracket(&p.b));
        let c = &self.criteria;
        let _ = writeln!(
            out,
            "criteria     prop1={} suff={} thm_comp={} stable={}",
            c.prop1, c.suff, c.thm_comp, c.stable
        );
        match c.intclosed_h_one {
            Some(v) => {
                let _ = writeln!(out, "  integrally closed; gr(T) CM = {v}");
            }
            None => {
                let _ = writeln!(out, "  bar(E) \\ E = {{{}}}", join(&c.integral_closure_gap));
            }
        }
        if let Some(o) = &self.oracle {
            let _ = writeln!(out, "oracle       {} mismatches", o.mismatches.len());
        }
        let breaches = self.breaches();
        if !breaches.is_empty() {
            let _ = writeln!(out, "INCONSISTENT: {}", breaches.join("; "));
        }
        let _ = writeln!(out, "time         {:.2} ms", self.timing_ms);
        if ascii {
            out
        } else {
            out.replace('<', "⟨").replace('>', "⟩")
        }
    }
}
