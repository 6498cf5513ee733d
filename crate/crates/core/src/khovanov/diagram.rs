use std::collections::BTreeMap;

use serde::Deserialize;

use crate::{Error, Result};

/// Cube dimension beyond which the 2^n resolutions are not worth building.
pub const MAX_CROSSINGS: usize = 16;

/// A planar link diagram in PD notation.
///
/// Each crossing lists four arc labels counterclockwise, starting from the
/// incoming under-arc. Crossingless circles cannot be written in PD form and
/// are carried as a separate `unknots` count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<[u32; 4]>,
    unknots: usize,
    labels: Vec<u32>,
    // dense arc id of every (crossing, slot)
    slots: Vec<[usize; 4]>,
    // the two (crossing, slot) ends of every dense arc
    ends: Vec<[(usize, usize); 2]>,
}

impl LinkDiagram {
    pub fn new(crossings: Vec<[u32; 4]>, unknots: usize) -> Result<Self> {
        if crossings.len() > MAX_CROSSINGS {
            return Err(Error::OutOfRange(format!("{} crossings", crossings.len())));
        }
        let mut seen: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
        for (c, x) in crossings.iter().enumerate() {
            for (s, &label) in x.iter().enumerate() {
                seen.entry(label).or_default().push((c, s));
            }
        }
        if let Some((label, occ)) = seen.iter().find(|(_, occ)| occ.len() != 2) {
            return Err(Error::InvalidDiagram(format!(
                "arc {label} occurs {} time(s), expected exactly 2",
                occ.len()
            )));
        }
        let labels: Vec<u32> = seen.keys().copied().collect();
        let ends: Vec<[(usize, usize); 2]> = seen.values().map(|occ| [occ[0], occ[1]]).collect();
        let mut slots = vec![[0usize; 4]; crossings.len()];
        for (arc, e) in ends.iter().enumerate() {
            for &(c, s) in e {
                slots[c][s] = arc;
            }
        }
        Ok(LinkDiagram { crossings, unknots, labels, slots, ends })
    }

    /// The crossingless diagram of `k` disjoint circles.
    pub fn unlink(k: usize) -> Self {
        LinkDiagram::new(Vec::new(), k).expect("empty diagram is valid")
    }

    pub fn n(&self) -> usize {
        self.crossings.len()
    }

    pub fn unknots(&self) -> usize {
        self.unknots
    }

    pub fn crossings(&self) -> &[[u32; 4]] {
        &self.crossings
    }

    pub fn arc_count(&self) -> usize {
        self.labels.len()
    }

    /// Original label of dense arc `arc`.
    pub fn arc_label(&self, arc: usize) -> u32 {
        self.labels[arc]
    }

    /// Dense arc id at `slot` (0..4) of crossing `c`.
    pub fn slot_arc(&self, c: usize, slot: usize) -> usize {
        self.slots[c][slot]
    }

    pub fn arc_ends(&self, arc: usize) -> [(usize, usize); 2] {
        self.ends[arc]
    }

    /// Same diagram with crossing `k` moved to position `perm[k]`.
    pub fn permute_crossings(&self, perm: &[usize]) -> Result<Self> {
        let mut xs = vec![[0u32; 4]; self.n()];
        for (k, &p) in perm.iter().enumerate() {
            xs[p] = self.crossings[k];
        }
        LinkDiagram::new(xs, self.unknots)
    }

    pub fn rename_arcs(&self, f: impl Fn(u32) -> u32) -> Result<Self> {
        let xs = self.crossings.iter().map(|x| x.map(&f)).collect();
        LinkDiagram::new(xs, self.unknots)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum JsonPd {
    Bare(Vec<[u32; 4]>),
    Object {
        #[serde(default)]
        pd: Vec<[u32; 4]>,
        #[serde(default)]
        unknots: usize,
    },
}

/// Parses a PD code.
///
/// Accepted forms: `PD[X[1,4,2,5], X(3,6,4,1), ...]` (brackets or
/// parentheses, one or many lines), bare JSON `[[1,4,2,5], ...]`, or a JSON
/// object `{"pd": [...], "unknots": k}`. A line `unknots=k` adds
/// crossingless circles to the text forms. `#` starts a comment.
pub fn parse_pd(text: &str) -> Result<LinkDiagram> {
    let body: String = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .collect::<Vec<_>>()
        .join("\n");
    let trimmed = body.trim_start();
    if trimmed.starts_with('[') || trimmed.starts_with('{') {
        let pd: JsonPd = serde_json::from_str(&body).map_err(|e| Error::Parse { line: e.line(), msg: e.to_string() })?;
        let (pd, unknots) = match pd {
            JsonPd::Bare(pd) => (pd, 0),
            JsonPd::Object { pd, unknots } => (pd, unknots),
        };
        return LinkDiagram::new(pd, unknots);
    }

    let mut crossings = Vec::new();
    let mut unknots = 0;
    for (k, line) in body.lines().enumerate() {
        let lineno = k + 1;
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("unknots") {
            let value = rest.trim_start().strip_prefix('=').map(str::trim);
            unknots = value.and_then(|v| v.parse().ok()).ok_or_else(|| Error::Parse {
                line: lineno,
                msg: format!("expected `unknots=<count>`, found `{line}`"),
            })?;
            continue;
        }
        parse_pd_line(line, lineno, &mut crossings)?;
    }
    LinkDiagram::new(crossings, unknots)
}

fn parse_pd_line(line: &str, lineno: usize, out: &mut Vec<[u32; 4]>) -> Result<()> {
    let err = |msg: String| Error::Parse { line: lineno, msg };
    let bytes = line.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b' ' | b'\t' | b',' | b'[' | b']' | b'(' | b')' => i += 1,
            b'P' if line[i..].starts_with("PD") => i += 2,
            b'X' => {
                let open = bytes.get(i + 1).copied();
                let close = match open {
                    Some(b'[') => b']',
                    Some(b'(') => b')',
                    _ => return Err(err("expected `[` or `(` after X".into())),
                };
                let end = line[i + 2..]
                    .find(close as char)
                    .map(|e| e + i + 2)
                    .ok_or_else(|| err("unterminated crossing".into()))?;
                let nums: Vec<u32> = line[i + 2..end]
                    .split(',')
                    .map(|t| t.trim().parse::<u32>().map_err(|_| err(format!("bad arc label `{}`", t.trim()))))
                    .collect::<Result<_>>()?;
                let tuple: [u32; 4] = nums
                    .try_into()
                    .map_err(|v: Vec<u32>| err(format!("crossing has {} labels, expected 4", v.len())))?;
                out.push(tuple);
                i = end + 1;
            }
            _ => return Err(err(format!("unexpected text `{}`", &line[i..]))),
        }
    }
    Ok(())
}
