use super::adversary::{AdversaryView, Strategy};
use crate::pir::{server_answer, Answer, AnswerMode, Database, FieldRng, PirError, SchemeParams, SymbolArray};

/// A query delivered to one server.
#[derive(Debug, Clone)]
pub struct Request {
    pub query: SymbolArray,
    pub mode: AnswerMode,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Response {
    pub server: usize,
    pub answer: Answer,
}

/// An in-process server holding a replica of the database. Honest nodes
/// answer exactly; byzantine nodes pass the honest answer through their
/// strategy.
pub struct ServerNode<'a> {
    id: usize,
    params: &'a SchemeParams,
    db: &'a Database,
    byzantine: Option<Strategy>,
    rng: FieldRng,
}

impl<'a> ServerNode<'a> {
    pub fn honest(id: usize, params: &'a SchemeParams, db: &'a Database) -> Self {
        Self {
            id,
            params,
            db,
            byzantine: None,
            rng: FieldRng::new(0),
        }
    }

    pub fn byzantine(id: usize, params: &'a SchemeParams, db: &'a Database, strategy: Strategy, rng: FieldRng) -> Self {
        Self {
            id,
            params,
            db,
            byzantine: Some(strategy),
            rng,
        }
    }

    pub fn id(&self) -> usize {
        self.id
    }

    pub fn is_byzantine(&self) -> bool {
        self.byzantine.is_some()
    }

    pub fn handle(&mut self, req: &Request) -> Result<Response, PirError> {
        let honest = server_answer(self.params, self.id, &req.query, self.db, req.mode)?;
        let answer = match &self.byzantine {
            None => honest,
            Some(strategy) => {
                let view = AdversaryView {
                    params: self.params,
                    server: self.id,
                    query: &req.query,
                    db: self.db,
                    mode: req.mode,
                    honest,
                };
                strategy.respond(&view, &mut self.rng)
            }
        };
        Ok(Response { server: self.id, answer })
    }
}
