//! Text formats: instance files, positions, move lists, traces and goal
//! patterns. Every parser reports 1-based line and column numbers.

use std::fmt::Write as _;

use inglenook_core::model::{SpecError, TrackName};
use inglenook_core::pattern::{Alternative, GoalPattern, TrackConstraint};
use inglenook_core::{CardMove, CardsSpec, Position, PuzzleSpec, ShuntMove, WagonId};

use crate::labels::LabelTable;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

fn err<T>(line: usize, col: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, col, msg: msg.into() })
}

/// Lines that carry content: not blank and not `#` comments. Yields the
/// 1-based line number, the column of the first non-blank character and
/// the trimmed text.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let trimmed = raw.trim_start();
        let col = raw.len() - trimmed.len() + 1;
        let t = trimmed.trim_end();
        (!t.is_empty() && !t.starts_with('#')).then_some((i + 1, col, t))
    })
}

/// Whitespace- or comma-separated fields with their character offsets.
fn fields(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (ci, (bi, ch)) in s.char_indices().enumerate() {
        if ch.is_whitespace() || ch == ',' {
            if let Some((c0, b0)) = start.take() {
                out.push((c0, &s[b0..bi]));
            }
        } else if start.is_none() {
            start = Some((ci, bi));
        }
    }
    if let Some((c0, b0)) = start {
        out.push((c0, &s[b0..]));
    }
    out
}

/// A parsed instance file: an inglenook puzzle or a cards-in-piles graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Puzzle(PuzzleSpec),
    Cards(CardsSpec),
}

/// Parses `key = value` instance files. Puzzles use `wagons`, `headshunt`
/// and `sidings`; cards-in-piles graphs use `cards` and `piles`.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let keys = ["wagons", "headshunt", "sidings", "cards", "piles"];
    let mut values: [Option<(usize, usize, Vec<usize>)>; 5] = Default::default();
    let mut last_line = 0;
    for (line, col, t) in content_lines(text) {
        last_line = line;
        let Some(eq) = t.find('=') else {
            return err(line, col, "expected `key = value`");
        };
        let key = t[..eq].trim();
        let Some(slot) = keys.iter().position(|k| *k == key) else {
            return err(line, col, format!("unknown key `{key}`"));
        };
        if values[slot].is_some() {
            return err(line, col, format!("`{key}` is given twice"));
        }
        let vcol = col + t[..eq + 1].chars().count();
        let mut nums = Vec::new();
        for (off, part) in fields(&t[eq + 1..]) {
            match part.parse::<usize>() {
                Ok(n) => nums.push(n),
                Err(_) => return err(line, vcol + off, format!("`{part}` is not a non-negative integer")),
            }
        }
        let vcol = vcol + fields(&t[eq + 1..]).first().map_or(0, |f| f.0);
        if nums.is_empty() {
            return err(line, vcol, format!("`{key}` needs a value"));
        }
        if (slot < 2 || slot == 3) && nums.len() != 1 {
            return err(line, vcol, format!("`{key}` takes a single number"));
        }
        values[slot] = Some((line, vcol, nums));
    }
    let end = last_line + 1;
    let [wagons, headshunt, sidings, cards, piles] = values;
    if cards.is_some() || piles.is_some() {
        if let Some((l, c, _)) = wagons.as_ref().or(headshunt.as_ref()).or(sidings.as_ref()) {
            return err(*l, *c, "mixes puzzle keys with `cards`/`piles`");
        }
        let Some((cl, cc, cards)) = cards else { return err(end, 1, "missing `cards`") };
        let Some((pl, pc, piles)) = piles else { return err(end, 1, "missing `piles`") };
        return CardsSpec::new(cards[0], piles).map(Instance::Cards).map_err(|e| {
            let (l, c) = match e {
                SpecError::NoPiles | SpecError::ZeroPile { .. } => (pl, pc),
                _ => (cl, cc),
            };
            ParseError { line: l, col: c, msg: e.to_string() }
        });
    }
    let Some((wl, wc, w)) = wagons else { return err(end, 1, "missing `wagons`") };
    let Some((hl, hc, h)) = headshunt else { return err(end, 1, "missing `headshunt`") };
    let Some((sl, sc, s)) = sidings else { return err(end, 1, "missing `sidings`") };
    PuzzleSpec::new(w[0], h[0], s).map(Instance::Puzzle).map_err(|e| {
        let (l, c) = match e {
            SpecError::ZeroHeadshunt => (hl, hc),
            SpecError::NoSidings | SpecError::ZeroSiding { .. } => (sl, sc),
            _ => (wl, wc),
        };
        ParseError { line: l, col: c, msg: e.to_string() }
    })
}

pub fn format_puzzle_spec(spec: &PuzzleSpec) -> String {
    let sidings: Vec<String> = spec.sidings().iter().map(|m| m.to_string()).collect();
    format!("wagons = {}\nheadshunt = {}\nsidings = {}\n", spec.wagons(), spec.headshunt(), sidings.join(" "))
}

/// A wagon token with its column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub text: String,
    pub col: usize,
}

struct Cursor {
    chars: Vec<char>,
    at: usize,
    line: usize,
    col0: usize,
}

impl Cursor {
    fn new(src: &str, line: usize, col0: usize) -> Self {
        Cursor { chars: src.chars().collect(), at: 0, line, col0 }
    }

    fn col(&self) -> usize {
        self.col0 + self.at
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.at).is_some_and(|c| c.is_whitespace()) {
            self.at += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.at).copied()
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        err(self.line, self.col(), msg)
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(x) if x == c => {
                self.at += 1;
                Ok(())
            }
            Some(x) => self.fail(format!("expected `{c}`, found `{x}`")),
            None => self.fail(format!("expected `{c}`, found end of line")),
        }
    }

    fn word(&mut self) -> Option<Token> {
        self.skip_ws();
        let start = self.at;
        while self.chars.get(self.at).is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_' || *c == '-') {
            self.at += 1;
        }
        (self.at > start).then(|| Token { text: self.chars[start..self.at].iter().collect(), col: self.col0 + start })
    }

    /// `H` or `S<i>`.
    fn track_name(&mut self) -> Result<(usize, usize), ParseError> {
        self.skip_ws();
        let col = self.col();
        let Some(w) = self.word() else { return self.fail("expected a track name (`H` or `S<i>`)") };
        if w.text == "H" {
            return Ok((0, col));
        }
        if let Some(n) = w.text.strip_prefix('S').and_then(|n| n.parse::<usize>().ok()).filter(|&n| n > 0) {
            return Ok((n, col));
        }
        err(self.line, col, format!("`{}` is not a track name (`H` or `S<i>`)", w.text))
    }

    /// Comma-separated tokens up to `close`.
    fn list(&mut self, close: char) -> Result<Vec<Token>, ParseError> {
        let mut out = Vec::new();
        if self.peek() == Some(close) {
            self.at += 1;
            return Ok(out);
        }
        loop {
            let Some(t) = self.word() else { return self.fail("expected a wagon label") };
            out.push(t);
            match self.peek() {
                Some(',') => self.at += 1,
                Some(c) if c == close => {
                    self.at += 1;
                    return Ok(out);
                }
                Some(c) => return self.fail(format!("expected `,` or `{close}`, found `{c}`")),
                None => return self.fail(format!("expected `{close}`, found end of line")),
            }
        }
    }

    fn end(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => self.fail(format!("unexpected `{c}`")),
        }
    }
}

/// Tracks of a position line, headshunt first, as raw tokens.
pub fn parse_position_tokens(line_text: &str, line: usize, col: usize) -> Result<Vec<Vec<Token>>, ParseError> {
    let mut c = Cursor::new(line_text, line, col);
    let mut tracks = Vec::new();
    loop {
        let (t, tcol) = c.track_name()?;
        if t != tracks.len() {
            let want = TrackName(tracks.len());
            return err(line, tcol, format!("expected track {want} here"));
        }
        c.expect(':')?;
        c.expect('[')?;
        tracks.push(c.list(']')?);
        match c.peek() {
            Some('|') => c.at += 1,
            _ => break,
        }
    }
    c.end()?;
    Ok(tracks)
}

/// Text of the single position line in `text` and where it starts.
fn single_line(text: &str) -> Result<(usize, usize, &str), ParseError> {
    let mut lines = content_lines(text);
    let Some(first) = lines.next() else { return err(1, 1, "expected a position, found nothing") };
    if let Some((l, c, _)) = lines.next() {
        return err(l, c, "expected a single position line");
    }
    Ok(first)
}

/// Collects every wagon token of a position text, for building a label table.
pub fn position_tokens(text: &str) -> Result<Vec<String>, ParseError> {
    let (line, col, t) = single_line(text)?;
    Ok(parse_position_tokens(t, line, col)?.into_iter().flatten().map(|t| t.text).collect())
}

pub fn parse_position(text: &str, spec: &PuzzleSpec, labels: &LabelTable) -> Result<Position, ParseError> {
    let (line, col, t) = single_line(text)?;
    parse_position_line(t, line, col, spec, labels)
}

fn parse_position_line(
    t: &str,
    line: usize,
    col: usize,
    spec: &PuzzleSpec,
    labels: &LabelTable,
) -> Result<Position, ParseError> {
    let raw = parse_position_tokens(t, line, col)?;
    if raw.len() != spec.track_count() {
        return err(line, col, format!("expected {} tracks, found {}", spec.track_count(), raw.len()));
    }
    let tracks = raw
        .iter()
        .map(|tr| tr.iter().map(|tok| resolve(tok, labels, line)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    let p = Position::new(tracks);
    spec.check_position(&p).map_err(|e| ParseError { line, col, msg: e.to_string() })?;
    Ok(p)
}

fn resolve(tok: &Token, labels: &LabelTable, line: usize) -> Result<WagonId, ParseError> {
    labels.id(&tok.text).ok_or_else(|| ParseError { line, col: tok.col, msg: format!("unknown wagon `{}`", tok.text) })
}

fn wagon_list(ws: &[WagonId], labels: &LabelTable) -> String {
    ws.iter().map(|&w| labels.name(w)).collect::<Vec<_>>().join(",")
}

pub fn format_position(p: &Position, labels: &LabelTable) -> String {
    let mut s = String::new();
    for (t, track) in p.tracks().iter().enumerate() {
        if t > 0 {
            s.push('|');
        }
        let _ = write!(s, "{}:[{}]", TrackName(t), wagon_list(track, labels));
    }
    s
}

/// Parses one move line: `PULL <k> S<r>` or `PUSH <k> S<r>`.
pub fn parse_move(t: &str, line: usize, col: usize) -> Result<ShuntMove, ParseError> {
    let mut c = Cursor::new(t, line, col);
    let Some(verb) = c.word() else { return c.fail("expected `PULL` or `PUSH`") };
    let make: fn(usize, usize) -> ShuntMove = match verb.text.as_str() {
        "PULL" => ShuntMove::pull,
        "PUSH" => ShuntMove::push,
        other => return err(line, verb.col, format!("expected `PULL` or `PUSH`, found `{other}`")),
    };
    let Some(k) = c.word() else { return c.fail("expected a wagon count") };
    let count = match k.text.parse::<usize>() {
        Ok(n) if n > 0 => n,
        _ => return err(line, k.col, format!("`{}` is not a positive wagon count", k.text)),
    };
    let (siding, scol) = c.track_name()?;
    if siding == 0 {
        return err(line, scol, "moves name a siding, not the headshunt");
    }
    c.end()?;
    Ok(make(count, siding))
}

pub fn format_moves(moves: &[ShuntMove]) -> String {
    moves.iter().map(|m| format!("{m}\n")).collect()
}

pub fn format_card_moves(moves: &[CardMove]) -> String {
    moves.iter().map(|m| format!("{m}\n")).collect()
}

/// A move list with optional start and finish position lines. `key = value`
/// report lines are skipped, so search and solver output can be replayed
/// directly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceText {
    pub start: Option<(usize, Position)>,
    pub moves: Vec<(usize, ShuntMove)>,
    pub finish: Option<(usize, Position)>,
}

pub fn parse_trace(text: &str, spec: &PuzzleSpec, labels: &LabelTable) -> Result<TraceText, ParseError> {
    let mut out = TraceText { start: None, moves: Vec::new(), finish: None };
    for (line, col, t) in content_lines(text) {
        if t.contains('=') {
            continue;
        }
        if is_position_line(t) {
            let p = parse_position_line(t, line, col, spec, labels)?;
            if out.start.is_none() && out.moves.is_empty() {
                out.start = Some((line, p));
            } else if out.finish.is_none() {
                out.finish = Some((line, p));
            } else {
                return err(line, col, "a trace holds at most a start and a finish position");
            }
            continue;
        }
        if out.finish.is_some() {
            return err(line, col, "moves after the finish position");
        }
        out.moves.push((line, parse_move(t, line, col)?));
    }
    Ok(out)
}

/// Wagon tokens in the first position line of a trace.
pub fn trace_start_tokens(text: &str) -> Option<Vec<String>> {
    let (line, col, t) = content_lines(text).find(|(_, _, t)| !t.contains('='))?;
    if !is_position_line(t) {
        return None;
    }
    parse_position_tokens(t, line, col).ok().map(|tr| tr.into_iter().flatten().map(|t| t.text).collect())
}

fn is_position_line(t: &str) -> bool {
    t.starts_with('H') && t[1..].trim_start().starts_with(':')
}

pub fn format_trace(start: &Position, moves: &[ShuntMove], finish: &Position, labels: &LabelTable) -> String {
    let mut s = format_position(start, labels);
    s.push('\n');
    s.push_str(&format_moves(moves));
    s.push_str(&format_position(finish, labels));
    s.push('\n');
    s
}

/// True when `text` looks like a goal pattern rather than a position.
pub fn is_pattern_text(text: &str) -> bool {
    content_lines(text).next().is_some_and(|(_, _, t)| t.contains('=') || t.contains('~'))
}

/// Goal pattern files: one alternative per line, `;`-separated clauses
/// `S3 = [4,5,6,7,8]`, `S2 ~ {1,2,3}`, `S1 = []` or `H = *`. Tracks not
/// mentioned are unconstrained.
pub fn parse_pattern(text: &str, spec: &PuzzleSpec, labels: &LabelTable) -> Result<GoalPattern, ParseError> {
    let mut alternatives = Vec::new();
    for (line, col, t) in content_lines(text) {
        let mut alt = Alternative::any(spec.track_count());
        let mut set = vec![false; spec.track_count()];
        let mut offset = 0;
        for clause in t.split(';') {
            let ccol = col + offset;
            offset += clause.chars().count() + 1;
            if clause.trim().is_empty() {
                continue;
            }
            let mut c = Cursor::new(clause, line, ccol);
            let (track, tcol) = c.track_name()?;
            if track >= spec.track_count() {
                return err(line, tcol, format!("track {} does not exist", TrackName(track)));
            }
            if set[track] {
                return err(line, tcol, format!("track {} is constrained twice", TrackName(track)));
            }
            set[track] = true;
            let constraint = match c.peek() {
                Some('=') => {
                    c.at += 1;
                    match c.peek() {
                        Some('*') => {
                            c.at += 1;
                            TrackConstraint::Any
                        }
                        Some('[') => {
                            c.at += 1;
                            let toks = c.list(']')?;
                            let ws = toks.iter().map(|t| resolve(t, labels, line)).collect::<Result<Vec<_>, _>>()?;
                            if ws.is_empty() {
                                TrackConstraint::Empty
                            } else {
                                TrackConstraint::Exact(ws)
                            }
                        }
                        _ => return c.fail("expected `[...]` or `*` after `=`"),
                    }
                }
                Some('~') => {
                    c.at += 1;
                    c.expect('{')?;
                    let toks = c.list('}')?;
                    let ws = toks.iter().map(|t| resolve(t, labels, line)).collect::<Result<Vec<_>, _>>()?;
                    if ws.is_empty() {
                        TrackConstraint::Empty
                    } else {
                        TrackConstraint::AnyOrder(ws)
                    }
                }
                _ => return c.fail("expected `=` or `~`"),
            };
            c.end()?;
            alt = alt.with(track, constraint);
        }
        alternatives.push(alt);
    }
    if alternatives.is_empty() {
        return err(1, 1, "a goal pattern needs at least one alternative");
    }
    Ok(GoalPattern::new(alternatives).expect("nonempty"))
}

pub fn format_pattern(g: &GoalPattern, labels: &LabelTable) -> String {
    let mut s = String::new();
    for alt in g.alternatives() {
        let clauses: Vec<String> = alt
            .tracks()
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != TrackConstraint::Any)
            .map(|(t, c)| {
                let name = TrackName(t);
                match c {
                    TrackConstraint::Exact(v) => format!("{name} = [{}]", wagon_list(v, labels)),
                    TrackConstraint::AnyOrder(v) => format!("{name} ~ {{{}}}", wagon_list(v, labels)),
                    TrackConstraint::Empty => format!("{name} = []"),
                    TrackConstraint::Any => format!("{name} = *"),
                }
            })
            .collect();
        if clauses.is_empty() {
            s.push_str("H = *");
        } else {
            s.push_str(&clauses.join("; "));
        }
        s.push('\n');
    }
    s
}
