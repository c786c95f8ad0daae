//! Report types shared by the subcommands, each rendered both as JSON
//! and as plain text for the terminal.

use fixpoint_core::interval::{fmt_rat, IntervalSet, Rat};
use serde_json::{json, Map, Value};

/// Outcome of the universal-property decision inside `check`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UniversalStatus {
    Decided(bool),
    Skipped(usize),
}

impl UniversalStatus {
    pub fn to_json(&self) -> Value {
        match self {
            UniversalStatus::Decided(b) => json!(b),
            UniversalStatus::Skipped(size) => json!(format!("skipped({size})")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub fpp: bool,
    pub witness: Option<Vec<usize>>,
    pub universal: UniversalStatus,
    pub nodes: u64,
    pub elapsed: std::time::Duration,
}

impl CheckReport {
    pub fn json(&self) -> Value {
        json!({
            "fpp": self.fpp,
            "witness": self.witness,
            "universal": self.universal.to_json(),
            "nodes": self.nodes,
        })
    }

    pub fn human(&self) -> String {
        let mut out = format!("fixed point property: {}\n", yesno(self.fpp));
        if let Some(w) = &self.witness {
            out += &format!("fixed-point-free witness: {w:?}\n");
        }
        out += &match &self.universal {
            UniversalStatus::Decided(b) => format!("universal fixed point property: {}\n", yesno(*b)),
            UniversalStatus::Skipped(size) => {
                format!("universal fixed point property: skipped (size {size})\n")
            }
        };
        out += &format!("search nodes: {} in {:?}", self.nodes, self.elapsed);
        out
    }
}

#[derive(Clone, Debug)]
pub struct SelectionReport {
    pub sat: bool,
    /// Chosen fixed point per map index, present when sat.
    pub choice: Option<Vec<usize>>,
    pub nodes: u64,
}

impl SelectionReport {
    pub fn json(&self) -> Value {
        let choice = self.choice.as_ref().map(|c| {
            let mut m = Map::new();
            for (k, &x) in c.iter().enumerate() {
                m.insert(k.to_string(), json!(x));
            }
            Value::Object(m)
        });
        json!({
            "sat": self.sat,
            "choice": choice,
        })
    }

    pub fn human(&self) -> String {
        match &self.choice {
            Some(c) => {
                let shown = c.len().min(24);
                let mut out = format!(
                    "selection map found over {} self-maps (search nodes: {})\nchoice: {:?}",
                    c.len(),
                    self.nodes,
                    &c[..shown]
                );
                if shown < c.len() {
                    out += &format!(" ... ({} entries, use --json for all)", c.len());
                }
                out
            }
            None => format!("no selection map (search nodes: {})", self.nodes),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CoreCliReport {
    pub removal_sequence: Vec<(usize, &'static str)>,
    pub core_elements: Vec<usize>,
    pub core_covers: Vec<(usize, usize)>,
    pub dismantlable: bool,
    /// Display names from the input file, when it carried any.
    pub labels: Option<Vec<String>>,
}

impl CoreCliReport {
    pub fn json(&self) -> Value {
        json!({
            "removal_sequence": self.removal_sequence,
            "core_elements": self.core_elements,
            "core_covers": self.core_covers,
            "dismantlable": self.dismantlable,
        })
    }

    pub fn human(&self) -> String {
        let name = |e: usize| match &self.labels {
            Some(labels) => labels[e].clone(),
            None => e.to_string(),
        };
        let mut out = String::new();
        if self.removal_sequence.is_empty() {
            out += "no beat points: the poset is its own core\n";
        } else {
            out += "removals:";
            for &(e, kind) in &self.removal_sequence {
                out += &format!(" {}({kind})", name(e));
            }
            out += "\n";
        }
        // cover indices are core-local; translate them back through the
        // surviving original elements before naming
        let covers: Vec<String> = self
            .core_covers
            .iter()
            .map(|&(a, b)| {
                format!(
                    "{} < {}",
                    name(self.core_elements[a]),
                    name(self.core_elements[b])
                )
            })
            .collect();
        out += &format!(
            "core: {} element(s), covers [{}]\ndismantlable: {}",
            self.core_elements.len(),
            covers.join(", "),
            yesno(self.dismantlable)
        );
        out
    }
}

#[derive(Clone, Debug)]
pub struct MapsReport {
    pub count: usize,
    pub tables: Option<Vec<Vec<usize>>>,
}

impl MapsReport {
    pub fn json(&self) -> Value {
        json!({
            "count": self.count,
            "maps": self.tables,
        })
    }

    pub fn human(&self) -> String {
        let mut out = format!("{} monotone self-maps", self.count);
        if let Some(tables) = &self.tables {
            for (k, t) in tables.iter().enumerate() {
                out += &format!("\n{k}: {t:?}");
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct RetractReport {
    pub found: bool,
    pub section: Option<Vec<usize>>,
    pub retraction: Option<Vec<usize>>,
}

impl RetractReport {
    pub fn json(&self) -> Value {
        json!({
            "found": self.found,
            "section": self.section,
            "retraction": self.retraction,
        })
    }

    pub fn human(&self) -> String {
        match (&self.section, &self.retraction) {
            (Some(s), Some(r)) => format!("retract found\nsection: {s:?}\nretraction: {r:?}"),
            _ => "no retraction exists".into(),
        }
    }
}

fn interval_set_json(set: &IntervalSet) -> Value {
    Value::Array(
        set.intervals()
            .iter()
            .map(|(a, b)| json!([fmt_rat(a), fmt_rat(b)]))
            .collect(),
    )
}

#[derive(Clone, Debug)]
pub struct IntervalDemoReport {
    pub t: Rat,
    pub fixed_points: IntervalSet,
    pub certificate: Option<(Rat, Rat)>,
}

impl IntervalDemoReport {
    pub fn json(&self) -> Value {
        json!({
            "t": fmt_rat(&self.t),
            "fixed_point_set": self.fixed_points.to_string(),
            "intervals": interval_set_json(&self.fixed_points),
            "jump": self.certificate.as_ref().map(|(l, r)| json!([fmt_rat(l), fmt_rat(r)])),
        })
    }

    pub fn human(&self) -> String {
        let mut out = format!(
            "t = {}\nfixed points of the slice: {}",
            fmt_rat(&self.t),
            self.fixed_points
        );
        if let Some((l, r)) = &self.certificate {
            out += &format!(
                "\nno continuous choice exists: the unique fixed point is {} below the critical parameter and {} above it",
                fmt_rat(l),
                fmt_rat(r)
            );
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct RetractionDemoReport {
    pub input: Vec<Rat>,
    pub image: Vec<Rat>,
    pub error_bound: Rat,
}

impl RetractionDemoReport {
    pub fn json(&self) -> Value {
        json!({
            "input": self.input.iter().map(fmt_rat).collect::<Vec<_>>(),
            "image": self.image.iter().map(fmt_rat).collect::<Vec<_>>(),
            "error_bound": fmt_rat(&self.error_bound),
        })
    }

    pub fn human(&self) -> String {
        use num_traits::Zero;
        let coords: Vec<String> = self.image.iter().map(fmt_rat).collect();
        let mut out = format!("image: ({})", coords.join(", "));
        if self.error_bound.is_zero() {
            out += "\nexact";
        } else {
            out += &format!(
                "\napproximated to 64 fractional bits; per-coordinate error at most {}",
                fmt_rat(&self.error_bound)
            );
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct BanachDemoReport {
    pub k: Rat,
    pub epsilon: Rat,
    pub fixed_f: Rat,
    pub fixed_g: Rat,
    pub sup_distance: Rat,
    pub lhs: Rat,
    pub rhs: Rat,
}

impl BanachDemoReport {
    pub fn json(&self) -> Value {
        json!({
            "k": fmt_rat(&self.k),
            "epsilon": fmt_rat(&self.epsilon),
            "fixed_point_f": fmt_rat(&self.fixed_f),
            "fixed_point_g": fmt_rat(&self.fixed_g),
            "sup_distance": fmt_rat(&self.sup_distance),
            "lhs": fmt_rat(&self.lhs),
            "rhs": fmt_rat(&self.rhs),
        })
    }

    pub fn human(&self) -> String {
        format!(
            "contractions f(x) = {k}*x and g(x) = {k}*x + {e} on [0, 1]\n\
             fixed points: p(f) = {pf}, p(g) = {pg}\n\
             |p(f) - p(g)| = {lhs} <= (1 - {k})^-1 * {sup} = {rhs}",
            k = fmt_rat(&self.k),
            e = fmt_rat(&self.epsilon),
            pf = fmt_rat(&self.fixed_f),
            pg = fmt_rat(&self.fixed_g),
            sup = fmt_rat(&self.sup_distance),
            lhs = fmt_rat(&self.lhs),
            rhs = fmt_rat(&self.rhs),
        )
    }
}

fn yesno(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
