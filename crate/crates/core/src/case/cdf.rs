//! IEEE Common Data Format reader.
//!
//! Only the title card, the bus section and the branch section are read;
//! loss zones, interchange data and tie lines are skipped. Column positions
//! are 1-based and inclusive, see `docs/cdf-columns.md`.

use super::{BranchRecord, BusKind, BusRecord, SystemCase};
use crate::error::CaseError;

struct Cols {
    first: usize,
    last: usize,
}

const fn cols(first: usize, last: usize) -> Cols {
    Cols { first, last }
}

const TITLE_BASE_MVA: Cols = cols(32, 37);
const TITLE_CASE_ID: Cols = cols(46, 73);

const BUS_NUMBER: Cols = cols(1, 4);
const BUS_TYPE: Cols = cols(25, 26);
const BUS_FINAL_V: Cols = cols(28, 33);
const BUS_FINAL_ANGLE: Cols = cols(34, 40);
const BUS_LOAD_MW: Cols = cols(41, 49);
const BUS_LOAD_MVAR: Cols = cols(50, 59);
const BUS_GEN_MW: Cols = cols(60, 67);
const BUS_GEN_MVAR: Cols = cols(68, 75);
const BUS_DESIRED_V: Cols = cols(85, 90);
const BUS_SHUNT_G: Cols = cols(107, 114);
const BUS_SHUNT_B: Cols = cols(115, 122);

const BRANCH_TAP_BUS: Cols = cols(1, 4);
const BRANCH_Z_BUS: Cols = cols(6, 9);
const BRANCH_CIRCUIT: Cols = cols(17, 17);
const BRANCH_R: Cols = cols(20, 29);
const BRANCH_X: Cols = cols(30, 40);
const BRANCH_B: Cols = cols(41, 50);
const BRANCH_RATIO: Cols = cols(77, 82);
const BRANCH_SHIFT: Cols = cols(84, 90);

/// One physical card with its 1-based line number.
struct Card<'a> {
    line: usize,
    text: &'a str,
}

impl<'a> Card<'a> {
    fn raw(&self, c: &Cols) -> Result<&'a str, CaseError> {
        let bytes = self.text.len();
        if c.first > bytes {
            return Ok("");
        }
        let end = c.last.min(bytes);
        self.text
            .get(c.first - 1..end)
            .ok_or_else(|| self.err(c, "non-ASCII text"))
    }

    fn err(&self, c: &Cols, message: impl Into<String>) -> CaseError {
        CaseError::Field {
            line: self.line,
            first: c.first,
            last: c.last,
            message: message.into(),
        }
    }

    fn real(&self, c: &Cols) -> Result<f64, CaseError> {
        let s = self.raw(c)?.trim();
        if s.is_empty() {
            return Err(self.err(c, "missing value"));
        }
        s.parse::<f64>()
            .map_err(|_| self.err(c, format!("expected a number, found `{s}`")))
    }

    fn real_or(&self, c: &Cols, default: f64) -> Result<f64, CaseError> {
        if self.raw(c)?.trim().is_empty() {
            Ok(default)
        } else {
            self.real(c)
        }
    }

    fn int(&self, c: &Cols) -> Result<i64, CaseError> {
        let s = self.raw(c)?.trim();
        if s.is_empty() {
            return Err(self.err(c, "missing value"));
        }
        s.parse::<i64>()
            .map_err(|_| self.err(c, format!("expected an integer, found `{s}`")))
    }

    fn bus_id(&self, c: &Cols) -> Result<u32, CaseError> {
        let v = self.int(c)?;
        u32::try_from(v)
            .ok()
            .filter(|&id| id > 0)
            .ok_or_else(|| self.err(c, format!("bus number must be positive, found {v}")))
    }
}

fn is_terminator(text: &str) -> bool {
    text.trim_start().starts_with("-999")
}

/// Reads an IEEE Common Data Format file into a validated [`SystemCase`].
///
/// Powers are converted from MW/MVAr to per-unit on the title-card MVA base.
/// Bus type codes map 3 to slack, 2 to PV and 0/1 to PQ. Slack and PV buses
/// take their desired voltage (columns 85-90) as `v_mag` when it is given.
pub fn parse_cdf(text: &str) -> Result<SystemCase, CaseError> {
    let mut lines = text.lines().enumerate().map(|(i, t)| Card {
        line: i + 1,
        text: t.trim_end_matches('\r'),
    });

    let title = lines
        .next()
        .ok_or_else(|| CaseError::Truncated("empty input, expected a title card".into()))?;
    let base_mva = title.real(&TITLE_BASE_MVA)?;
    let name = match title.raw(&TITLE_CASE_ID)?.trim() {
        "" => title.text.trim().to_string(),
        id => id.to_string(),
    };

    seek_section(&mut lines, "BUS DATA FOLLOWS")?;
    let mut buses = Vec::new();
    loop {
        let card = lines.next().ok_or_else(|| {
            CaseError::Truncated("BUS DATA section is not terminated by -999".into())
        })?;
        if is_terminator(card.text) {
            break;
        }
        if card.text.trim().is_empty() {
            continue;
        }
        buses.push(parse_bus(&card, base_mva)?);
    }

    seek_section(&mut lines, "BRANCH DATA FOLLOWS")?;
    let mut branches = Vec::new();
    loop {
        let card = lines.next().ok_or_else(|| {
            CaseError::Truncated("BRANCH DATA section is not terminated by -999".into())
        })?;
        if is_terminator(card.text) {
            break;
        }
        if card.text.trim().is_empty() {
            continue;
        }
        branches.push(parse_branch(&card)?);
    }

    let case = SystemCase {
        name,
        base_mva,
        buses,
        branches,
    };
    case.validate()?;
    Ok(case)
}

fn seek_section<'a>(
    lines: &mut impl Iterator<Item = Card<'a>>,
    header: &str,
) -> Result<(), CaseError> {
    for card in lines.by_ref() {
        if card.text.trim_start().starts_with(header) {
            return Ok(());
        }
    }
    Err(CaseError::Truncated(format!("missing `{header}` section")))
}

fn parse_bus(card: &Card, base_mva: f64) -> Result<BusRecord, CaseError> {
    let id = card.bus_id(&BUS_NUMBER)?;
    let kind = match card.int(&BUS_TYPE)? {
        0 | 1 => BusKind::Pq,
        2 => BusKind::Pv,
        3 => BusKind::Slack,
        other => return Err(card.err(&BUS_TYPE, format!("unknown bus type {other}"))),
    };
    let final_v = card.real(&BUS_FINAL_V)?;
    let desired_v = card.real_or(&BUS_DESIRED_V, 0.0)?;
    let v_mag = if kind.is_voltage_controlled() && desired_v > 0.0 {
        desired_v
    } else {
        final_v
    };
    Ok(BusRecord {
        id,
        kind,
        v_mag,
        v_ang_deg: card.real(&BUS_FINAL_ANGLE)?,
        p_gen: card.real(&BUS_GEN_MW)? / base_mva,
        q_gen: card.real(&BUS_GEN_MVAR)? / base_mva,
        p_load: card.real(&BUS_LOAD_MW)? / base_mva,
        q_load: card.real(&BUS_LOAD_MVAR)? / base_mva,
        shunt_g: card.real_or(&BUS_SHUNT_G, 0.0)?,
        shunt_b: card.real_or(&BUS_SHUNT_B, 0.0)?,
    })
}

fn parse_branch(card: &Card) -> Result<BranchRecord, CaseError> {
    let circuit_id = match card.raw(&BRANCH_CIRCUIT)?.trim() {
        "" => 1,
        s => s.parse::<u8>().map_err(|_| {
            card.err(
                &BRANCH_CIRCUIT,
                format!("expected a circuit number, found `{s}`"),
            )
        })?,
    };
    let ratio = card.real_or(&BRANCH_RATIO, 0.0)?;
    let shift = card.real_or(&BRANCH_SHIFT, 0.0)?;
    if shift != 0.0 {
        return Err(card.err(
            &BRANCH_SHIFT,
            "phase-shifting transformers are not supported",
        ));
    }
    Ok(BranchRecord {
        from_bus: card.bus_id(&BRANCH_TAP_BUS)?,
        to_bus: card.bus_id(&BRANCH_Z_BUS)?,
        r: card.real(&BRANCH_R)?,
        x: card.real(&BRANCH_X)?,
        b_charging: card.real(&BRANCH_B)?,
        // A zero ratio marks a transmission line.
        tap_ratio: if ratio == 0.0 { 1.0 } else { ratio },
        circuit_id,
    })
}
