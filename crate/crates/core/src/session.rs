//! Interactive derivation sessions: apply listed rewrites one at a time with
//! undo and redo, re-checking equivalence on every apply.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, MutexGuard};

use crate::circuit::{Circuit, CircuitStats};
use crate::error::{Error, Result};
use crate::rules::{apply, enumerate_moves, Move, RewriteStep};
use crate::semantics::{is_equivalent, MAX_QUBITS};

pub const DEFAULT_CAPACITY: usize = 64;

#[derive(Debug, Clone)]
pub struct Session {
    initial: Circuit,
    history: Vec<(RewriteStep, Circuit)>,
    cursor: usize,
}

/// What a client sees after every session operation.
#[derive(Debug, Clone, PartialEq)]
pub struct SessionView {
    pub id: String,
    pub circuit: Circuit,
    pub stats: CircuitStats,
    pub equivalent: bool,
    pub cursor: usize,
    pub history_len: usize,
}

impl Session {
    pub fn open(c: Circuit) -> Result<Session> {
        let violations = c.validate();
        if !violations.is_empty() {
            return Err(Error::Validation(violations));
        }
        if c.n() > MAX_QUBITS {
            return Err(Error::Resource(format!(
                "{} qubits exceeds the session limit of {MAX_QUBITS}",
                c.n()
            )));
        }
        c.stats()?;
        Ok(Session {
            initial: c,
            history: Vec::new(),
            cursor: 0,
        })
    }

    pub fn initial(&self) -> &Circuit {
        &self.initial
    }

    pub fn current(&self) -> &Circuit {
        match self.cursor {
            0 => &self.initial,
            k => &self.history[k - 1].1,
        }
    }

    pub fn cursor(&self) -> usize {
        self.cursor
    }

    pub fn history(&self) -> &[(RewriteStep, Circuit)] {
        &self.history
    }

    pub fn moves(&self) -> Result<Vec<Move>> {
        enumerate_moves(self.current())
    }

    /// Applies `step` to the cursor circuit, dropping any redo tail.
    pub fn apply(&mut self, step: RewriteStep) -> Result<&Circuit> {
        let next = apply(&step, self.current())?;
        if !is_equivalent(&self.initial, &next)? {
            return Err(Error::Soundness(format!("{step} changed the unitary")));
        }
        self.history.truncate(self.cursor);
        self.history.push((step, next));
        self.cursor += 1;
        Ok(self.current())
    }

    pub fn undo(&mut self) -> Result<&Circuit> {
        if self.cursor == 0 {
            return Err(Error::EmptyHistory("undo".into()));
        }
        self.cursor -= 1;
        Ok(self.current())
    }

    pub fn redo(&mut self) -> Result<&Circuit> {
        if self.cursor == self.history.len() {
            return Err(Error::EmptyHistory("redo".into()));
        }
        self.cursor += 1;
        Ok(self.current())
    }

    fn view(&self, id: &str) -> Result<SessionView> {
        let circuit = self.current().clone();
        Ok(SessionView {
            id: id.to_string(),
            stats: circuit.stats()?,
            equivalent: is_equivalent(&self.initial, &circuit)?,
            circuit,
            cursor: self.cursor,
            history_len: self.history.len(),
        })
    }
}

struct Entry {
    session: Arc<Mutex<Session>>,
    last_used: u64,
}

#[derive(Default)]
struct Inner {
    sessions: HashMap<String, Entry>,
    clock: u64,
}

/// Sessions keyed by random tokens, evicting the least recently used one
/// past the capacity. Each session is locked on its own, so work on
/// different sessions proceeds in parallel.
pub struct SessionStore {
    capacity: usize,
    inner: Mutex<Inner>,
}

impl Default for SessionStore {
    fn default() -> Self {
        SessionStore::new(DEFAULT_CAPACITY)
    }
}

fn lock<T>(m: &Mutex<T>) -> MutexGuard<'_, T> {
    m.lock().unwrap_or_else(|poisoned| poisoned.into_inner())
}

impl SessionStore {
    pub fn new(capacity: usize) -> SessionStore {
        SessionStore {
            capacity: capacity.max(1),
            inner: Mutex::new(Inner::default()),
        }
    }

    pub fn len(&self) -> usize {
        lock(&self.inner).sessions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn open(&self, c: Circuit) -> Result<SessionView> {
        let session = Session::open(c)?;
        let id = format!("{:016x}", rand::random::<u64>());
        let view = session.view(&id)?;
        let mut inner = lock(&self.inner);
        if inner.sessions.len() >= self.capacity {
            let oldest = inner
                .sessions
                .iter()
                .min_by_key(|(_, e)| e.last_used)
                .map(|(k, _)| k.clone());
            if let Some(k) = oldest {
                inner.sessions.remove(&k);
            }
        }
        inner.clock += 1;
        let last_used = inner.clock;
        inner.sessions.insert(
            id,
            Entry {
                session: Arc::new(Mutex::new(session)),
                last_used,
            },
        );
        Ok(view)
    }

    fn get(&self, id: &str) -> Result<Arc<Mutex<Session>>> {
        let mut inner = lock(&self.inner);
        inner.clock += 1;
        let now = inner.clock;
        let e = inner
            .sessions
            .get_mut(id)
            .ok_or_else(|| Error::UnknownSession(id.to_string()))?;
        e.last_used = now;
        Ok(e.session.clone())
    }

    pub fn view(&self, id: &str) -> Result<SessionView> {
        let s = self.get(id)?;
        let s = lock(&s);
        s.view(id)
    }

    pub fn moves(&self, id: &str) -> Result<Vec<Move>> {
        let s = self.get(id)?;
        let s = lock(&s);
        s.moves()
    }

    pub fn apply(&self, id: &str, step: RewriteStep) -> Result<SessionView> {
        let s = self.get(id)?;
        let mut s = lock(&s);
        s.apply(step)?;
        s.view(id)
    }

    pub fn undo(&self, id: &str) -> Result<SessionView> {
        let s = self.get(id)?;
        let mut s = lock(&s);
        s.undo()?;
        s.view(id)
    }

    pub fn redo(&self, id: &str) -> Result<SessionView> {
        let s = self.get(id)?;
        let mut s = lock(&s);
        s.redo()?;
        s.view(id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::passes::{builtin, derive_amy_toffoli};
    use crate::rules::RuleId;
    use crate::text::{parse, print};

    #[test]
    fn open_reports_stats() {
        let store = SessionStore::default();
        let v = store.open(builtin("amy-toffoli").unwrap()).unwrap();
        assert_eq!(v.stats.t_depth, 3);
        assert!(v.equivalent);
        assert_eq!(v.cursor, 0);
    }

    #[test]
    fn invalid_circuit_lists_violations() {
        let bad = Circuit::unchecked(2, vec![crate::circuit::Gate::cx(1, 1)]);
        assert!(matches!(Session::open(bad), Err(Error::Validation(v)) if !v.is_empty()));
    }

    #[test]
    fn apply_undo_redo() {
        let c = parse("qubits 2\ncx 0 1\ncx 0 1\nh 0").unwrap();
        let mut s = Session::open(c.clone()).unwrap();
        s.apply(RewriteStep::new(RuleId::CancelAdjacentInverses, 0)).unwrap();
        assert_eq!(s.current().len(), 1);
        assert_eq!(s.undo().unwrap(), &c);
        assert!(s.undo().is_err());
        assert_eq!(s.redo().unwrap().len(), 1);
        assert!(s.redo().is_err());
    }

    #[test]
    fn stale_anchor_after_divergence_fails() {
        let c = parse("qubits 2\ncx 0 1\ncx 0 1\nh 0\nh 0").unwrap();
        let mut s = Session::open(c).unwrap();
        s.apply(RewriteStep::new(RuleId::CancelInvolution, 2)).unwrap();
        s.undo().unwrap();
        s.apply(RewriteStep::new(RuleId::CancelAdjacentInverses, 0)).unwrap();
        assert_eq!(s.history().len(), 1);
        assert!(matches!(
            s.apply(RewriteStep::new(RuleId::CancelInvolution, 2)),
            Err(Error::InvalidArgument(_) | Error::NotApplicable { .. })
        ));
    }

    #[test]
    fn every_listed_move_applies() {
        let mut s = Session::open(builtin("barenco-toffoli").unwrap()).unwrap();
        for m in s.moves().unwrap() {
            s.apply(m.step).unwrap();
            s.undo().unwrap();
        }
    }

    #[test]
    fn scripted_replay_reaches_the_builtin() {
        let script = derive_amy_toffoli().unwrap();
        let store = SessionStore::default();
        let id = store.open(script.initial.clone()).unwrap().id;
        let mut last = None;
        for s in script.steps {
            last = Some(store.apply(&id, s.step).unwrap());
        }
        let last = last.unwrap();
        assert!(last.equivalent);
        assert_eq!(print(&last.circuit, true), print(&builtin("amy-toffoli").unwrap(), true));
    }

    #[test]
    fn least_recently_used_is_evicted() {
        let store = SessionStore::new(2);
        let c = parse("qubits 1\nh 0").unwrap();
        let a = store.open(c.clone()).unwrap().id;
        let b = store.open(c.clone()).unwrap().id;
        store.view(&a).unwrap();
        store.open(c).unwrap();
        assert_eq!(store.len(), 2);
        assert!(store.view(&a).is_ok());
        assert!(matches!(store.view(&b), Err(Error::UnknownSession(_))));
    }
}
