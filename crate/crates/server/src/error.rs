use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use serde::Serialize;

/// An error reply: `{"error": code, "detail": text}` with an HTTP status.
#[derive(Debug, Serialize)]
pub struct ApiError {
    #[serde(skip)]
    pub status: u16,
    pub error: &'static str,
    pub detail: String,
}

impl ApiError {
    fn new(status: u16, error: &'static str, detail: impl Into<String>) -> Self {
        ApiError { status, error, detail: detail.into() }
    }

    pub fn bad_request(detail: impl Into<String>) -> Self {
        Self::new(400, "invalid_input", detail)
    }

    pub fn not_found(id: &str) -> Self {
        Self::new(404, "unknown_session", format!("no session {id:?}"))
    }

    pub fn out_of_turn(detail: impl Into<String>) -> Self {
        Self::new(409, "out_of_turn", detail)
    }

    pub fn finished() -> Self {
        Self::new(409, "game_finished", "the game is over")
    }

    pub fn illegal(detail: impl Into<String>) -> Self {
        Self::new(422, "illegal_move", detail)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = StatusCode::from_u16(self.status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
        (status, Json(self)).into_response()
    }
}
