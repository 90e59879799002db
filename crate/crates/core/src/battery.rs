//! Fixed battery of worked-example claims with expected values.
//!
//! Each claim is evaluated on its own side data; re-running a claim id on
//! different data compares against the same expected value.

use crate::ehrhart::{real_fiber_size, verify_duality, verify_ehrhart_identity};
use crate::error::{Error, Result};
use crate::exact::{is_integral, Vector};
use crate::polytope::{h_to_v, polytope_dim, remove_redundant};
use crate::toric::{facet_labels, normal_fan, singularity_report, ConeStatus};
use crate::weights::{fm_polytope, polygon_hrep, SideData};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimResult {
    pub id: String,
    pub input: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BatteryReport {
    pub claims: Vec<ClaimResult>,
}

impl BatteryReport {
    pub fn passed(&self) -> usize {
        self.claims.iter().filter(|c| c.pass).count()
    }

    pub fn all_pass(&self) -> bool {
        !self.claims.is_empty() && self.passed() == self.claims.len()
    }
}

struct Claim {
    id: &'static str,
    m: usize,
    r: &'static [i64],
    expected: &'static str,
    compute: fn(&SideData) -> Result<String>,
}

const CLAIMS: &[Claim] = &[
    Claim {
        id: "pentagon-vertices",
        m: 1,
        r: &[3, 3, 3, 3, 3],
        expected: "(0,3) (3,0) (3,6) (6,3) (6,6)",
        compute: polygon_vertices,
    },
    Claim {
        id: "hexagon-vertices",
        m: 1,
        r: &[3, 3, 3, 3, 4],
        expected: "(0,3) (2,1) (4,1) (4,7) (6,3) (6,7)",
        compute: polygon_vertices,
    },
    Claim {
        id: "heptagon-vertices",
        m: 1,
        r: &[3, 4, 3, 4, 3],
        expected: "(1,2) (1,4) (2,1) (4,1) (4,7) (7,4) (7,7)",
        compute: polygon_vertices,
    },
    Claim {
        id: "pentagon-singular-points",
        m: 1,
        r: &[3, 3, 3, 3, 3],
        expected: "2 cyclic of order 2",
        compute: singular_points,
    },
    Claim {
        id: "hexagon-singular-points",
        m: 1,
        r: &[3, 3, 3, 3, 4],
        expected: "1 cyclic of order 2",
        compute: singular_points,
    },
    Claim {
        id: "heptagon-smooth",
        m: 1,
        r: &[3, 4, 3, 4, 3],
        expected: "0 singular",
        compute: singular_points,
    },
    Claim {
        id: "hexagon-singular-location",
        m: 1,
        r: &[3, 3, 3, 3, 4],
        expected: "(0,3)",
        compute: singular_locations,
    },
    Claim {
        id: "simplex",
        m: 1,
        r: &[2, 2, 2, 2, 2, 9],
        expected: "4 facets, 4 vertices",
        compute: facet_vertex_counts,
    },
    Claim {
        id: "coincident-divisors",
        m: 1,
        r: &[1, 1, 2, 2],
        expected: "N2(2) N3(2) N1(3) N2(3)",
        compute: shared_divisor_tags,
    },
    Claim {
        id: "half-integral-slice",
        m: 1,
        r: &[3, 3, 3, 3, 3],
        expected: "non-integral vertices",
        compute: slice_integrality,
    },
    Claim {
        id: "polygon-slice-dimension",
        m: 1,
        r: &[3, 3, 3, 3, 4],
        expected: "2",
        compute: slice_dimension,
    },
    Claim {
        id: "configuration-slice-dimension",
        m: 2,
        r: &[2, 2, 2, 2, 2, 2],
        expected: "4",
        compute: slice_dimension,
    },
    Claim {
        id: "duality-invariants",
        m: 1,
        r: &[3, 3, 3, 3, 4],
        expected: "dimension vertices facets dilate counts fingerprint agree",
        compute: duality,
    },
    Claim {
        id: "ehrhart-multiplicity",
        m: 1,
        r: &[3, 3, 3, 3, 4],
        expected: "t=1: 11=11, t=2: 33=33, t=3: 67=67",
        compute: ehrhart_identity,
    },
    Claim {
        id: "fiber-size-n5",
        m: 1,
        r: &[1, 1, 1, 1, 1],
        expected: "4",
        compute: fiber_size,
    },
    Claim {
        id: "fiber-size-n6",
        m: 1,
        r: &[1, 1, 1, 1, 1, 1],
        expected: "8",
        compute: fiber_size,
    },
];

fn point(v: &Vector) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn polygon_vertices(s: &SideData) -> Result<String> {
    let v = h_to_v(&polygon_hrep(s)?)?;
    Ok(v.vertices().iter().map(point).collect::<Vec<_>>().join(" "))
}

fn singular_points(s: &SideData) -> Result<String> {
    let report = singularity_report(&normal_fan(&remove_redundant(&polygon_hrep(s)?)?)?);
    let singular: Vec<_> = report.singular().collect();
    if singular.is_empty() {
        return Ok("0 singular".into());
    }
    let mut orders: Vec<String> = singular
        .iter()
        .map(|e| match &e.status {
            ConeStatus::CyclicQuotient(k) => format!("cyclic of order {k}"),
            _ => "non-simplicial".into(),
        })
        .collect();
    orders.sort();
    orders.dedup();
    Ok(format!("{} {}", singular.len(), orders.join(", ")))
}

fn singular_locations(s: &SideData) -> Result<String> {
    let report = singularity_report(&normal_fan(&remove_redundant(&polygon_hrep(s)?)?)?);
    Ok(report.singular().map(|e| point(&e.vertex)).collect::<Vec<_>>().join(" "))
}

fn facet_vertex_counts(s: &SideData) -> Result<String> {
    let p = remove_redundant(&polygon_hrep(s)?)?;
    Ok(format!(
        "{} facets, {} vertices",
        p.inequalities().len(),
        h_to_v(&p)?.len()
    ))
}

fn shared_divisor_tags(s: &SideData) -> Result<String> {
    let p = remove_redundant(&polygon_hrep(s)?)?;
    let labels = facet_labels(s, &p)?;
    let shared = labels
        .iter()
        .filter(|l| l.tags.len() > 1)
        .map(|l| l.tags.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>();
    Ok(if shared.is_empty() {
        "no shared facet".into()
    } else {
        shared.join("; ")
    })
}

fn slice_integrality(s: &SideData) -> Result<String> {
    let v = h_to_v(&fm_polytope(s)?.entry_chart)?;
    Ok(if v.vertices().iter().all(|p| is_integral(p)) {
        "integral vertices".into()
    } else {
        "non-integral vertices".into()
    })
}

fn slice_dimension(s: &SideData) -> Result<String> {
    Ok(polytope_dim(&fm_polytope(s)?.entry_chart)?.to_string())
}

fn duality(s: &SideData) -> Result<String> {
    let report = verify_duality(s, 3)?;
    let failed: Vec<&str> = report
        .checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| c.name.as_str())
        .collect();
    Ok(if failed.is_empty() {
        "dimension vertices facets dilate counts fingerprint agree".into()
    } else {
        format!("mismatch: {}", failed.join(", "))
    })
}

fn ehrhart_identity(s: &SideData) -> Result<String> {
    let rows = verify_ehrhart_identity(s, 3)?;
    Ok(rows
        .iter()
        .map(|r| {
            let sign = if r.pass { "=" } else { "!=" };
            format!("t={}: {}{sign}{}", r.dilate, r.lattice_count, r.multiplicity)
        })
        .collect::<Vec<_>>()
        .join(", "))
}

fn fiber_size(s: &SideData) -> Result<String> {
    Ok(real_fiber_size(s.m(), s.n())?.to_string())
}

/// Ids of all claims, in battery order.
pub fn claim_ids() -> Vec<&'static str> {
    CLAIMS.iter().map(|c| c.id).collect()
}

/// Default side data of a claim.
pub fn claim_input(id: &str) -> Result<SideData> {
    let c = find(id)?;
    SideData::from_i64(c.m, c.r)
}

fn find(id: &str) -> Result<&'static Claim> {
    CLAIMS
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::Parse(format!("unknown claim id \"{id}\"")))
}

/// Evaluates claim `id` on `s`; computation errors become failing entries.
pub fn run_claim(id: &str, s: &SideData) -> Result<ClaimResult> {
    let c = find(id)?;
    let computed = match (c.compute)(s) {
        Ok(v) => v,
        Err(e) => format!("error: {e}"),
    };
    Ok(ClaimResult {
        id: c.id.to_string(),
        input: s.to_string(),
        pass: computed == c.expected,
        expected: c.expected.to_string(),
        computed,
    })
}

pub fn example_battery() -> BatteryReport {
    let claims = CLAIMS
        .iter()
        .map(|c| {
            let s = SideData::from_i64(c.m, c.r).expect("battery inputs are valid");
            run_claim(c.id, &s).expect("id is listed")
        })
        .collect();
    BatteryReport { claims }
}
