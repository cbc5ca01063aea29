//! One game between a human and the engine. All rules come from the
//! engine module; this file only tracks whose sub-move is next.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{SystemTime, UNIX_EPOCH};

use matchgame::strategies::{GreedyStrategy, OptimalStrategy, Strategy};
use matchgame::{GameSpec, GameState, Graph, Move, Role, VertexSet};
use serde::{Deserialize, Serialize};

use crate::error::ApiError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    AwaitingInitiation,
    AwaitingResponse,
    Finished,
}

/// A human sub-move: an initiation vertex or a response image.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum SubMove {
    Initiate { vertex: usize },
    Respond { image: Vec<usize> },
}

enum Engine {
    Exact(Box<OptimalStrategy>),
    Greedy { initiator: GreedyStrategy, responder: GreedyStrategy },
}

pub struct Session {
    pub id: String,
    spec: GameSpec,
    state: GameState,
    human: Role,
    pending: Option<usize>,
    engine: Engine,
    cap: usize,
    created_ms: u64,
    updated_ms: u64,
}

#[derive(Serialize)]
pub struct MoveView {
    pub init: usize,
    pub image: Vec<usize>,
}

#[derive(Serialize)]
pub struct View {
    pub id: String,
    pub spec: GameSpec,
    pub graph: Graph,
    pub human_role: Role,
    pub status: Status,
    /// Role that makes the next sub-move; absent once finished.
    pub to_move: Option<Role>,
    pub human_to_move: bool,
    pub available: Vec<usize>,
    pub taken: Vec<usize>,
    pub legal_initiations: Vec<usize>,
    pub pending_initiation: Option<usize>,
    /// Response images for each legal initiation, or for the pending one.
    pub responses: BTreeMap<usize, Vec<Vec<usize>>>,
    pub history: Vec<MoveView>,
    pub moves: usize,
    /// `exact` or `greedy`.
    pub engine: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub engine_note: Option<String>,
    pub cap: usize,
    pub created_ms: u64,
    pub updated_ms: u64,
}

#[derive(Serialize)]
pub struct OptionEntry {
    pub image: Vec<usize>,
    /// Final move count if this image is taken and play is optimal after.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total: Option<usize>,
}

#[derive(Serialize)]
pub struct Options {
    pub vertex: usize,
    pub responses: Vec<OptionEntry>,
}

#[derive(Serialize)]
pub struct HintEntry {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub image: Option<Vec<usize>>,
    pub total: usize,
}

#[derive(Serialize)]
pub struct Hint {
    pub status: Status,
    pub moves: usize,
    /// Final move count under optimal play from here.
    pub value: Option<usize>,
    pub options: Vec<HintEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// What the replay log records after each change.
#[derive(Serialize)]
pub struct LogRecord<'a> {
    pub id: &'a str,
    pub spec: &'a GameSpec,
    pub graph: &'a Graph,
    pub human_role: Role,
    pub history: Vec<MoveView>,
}

fn now_ms() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_millis() as u64)
}

fn move_view(m: &Move) -> MoveView {
    MoveView { init: m.init, image: m.image.to_vec() }
}

impl Session {
    /// Creates a session and lets the engine play while it is its turn.
    pub fn new(id: String, spec: GameSpec, graph: Graph, human: Role, cap: usize) -> Session {
        let graph = Arc::new(graph);
        let engine = match OptimalStrategy::with_cap(Arc::clone(&graph), &spec, cap) {
            Ok(opt) => Engine::Exact(Box::new(opt)),
            Err(_) => Engine::Greedy {
                initiator: GreedyStrategy::new(&spec, spec.initiator),
                responder: GreedyStrategy::new(&spec, spec.responder()),
            },
        };
        let t = now_ms();
        let mut s = Session {
            id,
            state: GameState::new(graph),
            spec,
            human,
            pending: None,
            engine,
            cap,
            created_ms: t,
            updated_ms: t,
        };
        s.auto_play();
        s
    }

    pub fn status(&self) -> Status {
        if self.pending.is_some() {
            Status::AwaitingResponse
        } else if self.state.is_terminal(&self.spec) {
            Status::Finished
        } else {
            Status::AwaitingInitiation
        }
    }

    fn to_move(&self) -> Option<Role> {
        match self.status() {
            Status::AwaitingInitiation => Some(Role::Initiator),
            Status::AwaitingResponse => Some(Role::Responder),
            Status::Finished => None,
        }
    }

    fn exact(&mut self) -> Option<&mut OptimalStrategy> {
        match &mut self.engine {
            Engine::Exact(opt) => Some(opt),
            Engine::Greedy { .. } => None,
        }
    }

    pub fn view(&self) -> View {
        let avail = self.state.available();
        let g = self.state.graph();
        let pattern = &self.spec.pattern;
        let status = self.status();
        let legal = match status {
            Status::AwaitingInitiation => self.state.legal_initiations(&self.spec),
            _ => VertexSet::EMPTY,
        };
        let images = |v: usize| pattern.response_images(g, avail, v).into_iter().map(VertexSet::to_vec).collect();
        let responses = match self.pending {
            Some(v) => BTreeMap::from([(v, images(v))]),
            None => legal.iter().map(|v| (v, images(v))).collect(),
        };
        let to_move = self.to_move();
        let (engine, engine_note) = match self.engine {
            Engine::Exact(_) => ("exact", None),
            Engine::Greedy { .. } => (
                "greedy",
                Some(format!(
                    "graph has {} vertices, above the exact cap of {}; the engine plays a non-optimal greedy heuristic and hints are unavailable",
                    g.n(),
                    self.cap
                )),
            ),
        };
        View {
            id: self.id.clone(),
            spec: self.spec.clone(),
            graph: g.clone(),
            human_role: self.human,
            status,
            to_move,
            human_to_move: to_move == Some(self.human),
            available: avail.to_vec(),
            taken: (g.vertices() - avail).to_vec(),
            legal_initiations: legal.to_vec(),
            pending_initiation: self.pending,
            responses,
            history: self.state.history().iter().map(move_view).collect(),
            moves: self.state.moves_made(),
            engine,
            engine_note,
            cap: self.cap,
            created_ms: self.created_ms,
            updated_ms: self.updated_ms,
        }
    }

    pub fn log_record(&self) -> LogRecord<'_> {
        LogRecord {
            id: &self.id,
            spec: &self.spec,
            graph: self.state.graph(),
            human_role: self.human,
            history: self.state.history().iter().map(move_view).collect(),
        }
    }

    /// Applies a human sub-move, then lets the engine answer.
    pub fn human_move(&mut self, sub: SubMove) -> Result<(), ApiError> {
        match self.to_move() {
            None => return Err(ApiError::finished()),
            Some(r) if r != self.human => return Err(ApiError::out_of_turn("it is the engine's turn")),
            _ => {}
        }
        match (sub, self.pending) {
            (SubMove::Initiate { vertex }, None) => {
                if vertex >= 64 || !self.state.legal_initiations(&self.spec).contains(vertex) {
                    return Err(ApiError::illegal(format!("vertex {vertex} is not a legal initiation")));
                }
                self.pending = Some(vertex);
            }
            (SubMove::Respond { image }, Some(v)) => {
                if image.iter().any(|&u| u >= 64) {
                    return Err(ApiError::illegal("vertex id out of range"));
                }
                let set = VertexSet::from_vertices(image.iter().copied());
                let mv = Move::new(v, set);
                if set.len() != image.len() || !self.state.is_legal(&self.spec, &mv) {
                    return Err(ApiError::illegal(format!("{image:?} is not a legal response to {v}")));
                }
                self.apply(mv);
            }
            (SubMove::Initiate { .. }, Some(v)) => {
                return Err(ApiError::out_of_turn(format!("awaiting a response to the initiation at {v}")));
            }
            (SubMove::Respond { .. }, None) => return Err(ApiError::out_of_turn("awaiting an initiation")),
        }
        self.touch();
        self.auto_play();
        Ok(())
    }

    /// The engine makes the next sub-move whoever owns it, then keeps
    /// playing its own side.
    pub fn engine_move(&mut self) -> Result<(), ApiError> {
        if self.status() == Status::Finished {
            return Err(ApiError::finished());
        }
        self.engine_step();
        self.touch();
        self.auto_play();
        Ok(())
    }

    fn touch(&mut self) {
        self.updated_ms = now_ms();
    }

    fn auto_play(&mut self) {
        while matches!(self.to_move(), Some(r) if r != self.human) {
            self.engine_step();
        }
        self.touch();
    }

    fn apply(&mut self, mv: Move) {
        self.state = self.state.apply(&self.spec, mv).expect("move checked legal");
        self.pending = None;
    }

    fn engine_step(&mut self) {
        let state = self.state.clone();
        match self.pending {
            None => {
                let v = match &mut self.engine {
                    Engine::Exact(opt) => opt.initiate(&state),
                    Engine::Greedy { initiator, .. } => initiator.initiate(&state),
                };
                self.pending = Some(v.expect("non-terminal state has an initiation"));
            }
            Some(v) => {
                let img = match &mut self.engine {
                    Engine::Exact(opt) => opt.respond(&state, v),
                    Engine::Greedy { responder, .. } => responder.respond(&state, v),
                };
                self.apply(Move::new(v, img.expect("legal initiation has a response")));
            }
        }
    }

    /// Response images at `vertex`, with the resulting final move count
    /// when the exact engine is in use.
    pub fn options(&mut self, vertex: usize) -> Result<Options, ApiError> {
        let (avail, moves) = (self.state.available(), self.state.moves_made());
        let legal = match self.pending {
            Some(v) => v == vertex,
            None => vertex < 64 && self.state.legal_initiations(&self.spec).contains(vertex),
        };
        if !legal {
            return Err(ApiError::illegal(format!("vertex {vertex} is not a legal initiation here")));
        }
        let images = self.spec.pattern.response_images(self.state.graph(), avail, vertex);
        let mut solver = self.exact().map(|o| o.solver());
        let responses = images
            .into_iter()
            .map(|img| OptionEntry {
                image: img.to_vec(),
                total: solver.as_mut().map(|s| moves + s.value_after(avail, img)),
            })
            .collect();
        Ok(Options { vertex, responses })
    }

    /// Final move counts for each option of the next sub-move under
    /// optimal play afterwards; empty above the exact cap.
    pub fn hint(&mut self) -> Hint {
        let status = self.status();
        let (avail, moves, pending) = (self.state.available(), self.state.moves_made(), self.pending);
        let inits = self.state.legal_initiations(&self.spec);
        let images = pending.map(|v| self.spec.pattern.response_images(self.state.graph(), avail, v));
        let Some(opt) = self.exact() else {
            return Hint {
                status,
                moves,
                value: None,
                options: Vec::new(),
                note: Some("hints need the exact engine; this graph is above the cap".into()),
            };
        };
        let solver = opt.solver();
        let (value, options) = match (pending, images) {
            (Some(v), Some(images)) => {
                let value = moves + solver.initiation_value(avail, v).expect("pending initiation is legal");
                let options = images
                    .into_iter()
                    .map(|img| HintEntry { vertex: None, image: Some(img.to_vec()), total: moves + solver.value_after(avail, img) })
                    .collect();
                (value, options)
            }
            _ => {
                let options = inits
                    .iter()
                    .map(|v| HintEntry {
                        vertex: Some(v),
                        image: None,
                        total: moves + solver.initiation_value(avail, v).expect("legal initiation"),
                    })
                    .collect();
                (moves + solver.value(avail), options)
            }
        };
        Hint { status, moves, value: Some(value), options, note: None }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use matchgame::families::{gen_caterpillar, gen_path};
    use matchgame::{Pattern, Player};

    fn p7_stripe_min(human: Role) -> Session {
        let spec = GameSpec::new(Pattern::Stripe, Player::Min);
        Session::new("t".into(), spec, gen_path(7).unwrap().graph, human, 22)
    }

    #[test]
    fn engine_answers_a_human_initiation() {
        let mut s = p7_stripe_min(Role::Initiator);
        assert_eq!(s.status(), Status::AwaitingInitiation);
        s.human_move(SubMove::Initiate { vertex: 1 }).unwrap();
        let v = s.view();
        assert_eq!(v.history.len(), 1);
        assert_eq!(v.history[0].image, vec![1, 2, 3]);
        assert!(v.human_to_move);
    }

    #[test]
    fn engine_initiates_first_when_human_responds() {
        let s = p7_stripe_min(Role::Responder);
        let v = s.view();
        assert_eq!(v.status, Status::AwaitingResponse);
        assert_eq!(v.pending_initiation, Some(0));
    }

    #[test]
    fn out_of_turn_and_illegal_moves_leave_state_alone() {
        let mut s = p7_stripe_min(Role::Initiator);
        assert_eq!(s.human_move(SubMove::Respond { image: vec![0, 1, 2] }).unwrap_err().status, 409);
        assert_eq!(s.human_move(SubMove::Initiate { vertex: 99 }).unwrap_err().status, 422);
        assert_eq!(s.view().moves, 0);
    }

    #[test]
    fn caterpillar_center_ends_the_game() {
        let spec = GameSpec::new(Pattern::Star, Player::Max);
        let inst = gen_caterpillar(2).unwrap();
        let mut s = Session::new("c".into(), spec, inst.graph, Role::Initiator, 22);
        s.human_move(SubMove::Initiate { vertex: 1 }).unwrap();
        let v = s.view();
        assert_eq!((v.status, v.moves), (Status::Finished, 1));
    }

    #[test]
    fn hints_report_final_totals() {
        let mut s = p7_stripe_min(Role::Initiator);
        let h = s.hint();
        assert_eq!(h.value, Some(2));
        let at1 = h.options.iter().find(|o| o.vertex == Some(1)).unwrap();
        assert_eq!(at1.total, 2);
    }
}
