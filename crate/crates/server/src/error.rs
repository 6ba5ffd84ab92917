use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use happier_core::criteria::CriteriaError;
use happier_core::linkography::LinkographyError;
use happier_core::session::SessionError;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ErrorCode {
    NotFound,
    InvalidInput,
    ProviderUnavailable,
    Conflict,
    Internal,
}

impl ErrorCode {
    pub fn status(self) -> StatusCode {
        match self {
            Self::NotFound => StatusCode::NOT_FOUND,
            Self::InvalidInput => StatusCode::BAD_REQUEST,
            Self::ProviderUnavailable => StatusCode::BAD_GATEWAY,
            Self::Conflict => StatusCode::CONFLICT,
            Self::Internal => StatusCode::INTERNAL_SERVER_ERROR,
        }
    }
}

/// Body of every non-2xx response.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, thiserror::Error)]
#[error("{code:?}: {message}")]
pub struct ApiError {
    pub code: ErrorCode,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

impl ApiError {
    pub fn new(code: ErrorCode, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
            detail: None,
        }
    }

    pub fn not_found(message: impl Into<String>) -> Self {
        Self::new(ErrorCode::NotFound, message)
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        Self::new(ErrorCode::InvalidInput, message)
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Self::new(ErrorCode::Internal, message)
    }

    pub fn with_detail(mut self, detail: Value) -> Self {
        self.detail = Some(detail);
        self
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        if self.code == ErrorCode::Internal {
            tracing::error!(message = %self.message, "internal error");
        }
        (self.code.status(), Json(self)).into_response()
    }
}

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> Self {
        match &e {
            SessionError::Pdb(_) => Self::invalid(e.to_string()).with_detail(serde_json::json!({"field": "pdb"})),
            SessionError::Sdf(_) => Self::invalid(e.to_string()).with_detail(serde_json::json!({"field": "sdf"})),
            SessionError::UnknownProtein(_) | SessionError::NotFound(_) => Self::not_found(e.to_string()),
            SessionError::InvalidInput(_) => Self::invalid(e.to_string()),
            SessionError::Corrupt(_) | SessionError::Io(_) => Self::internal(e.to_string()),
        }
    }
}

impl From<LinkographyError> for ApiError {
    fn from(e: LinkographyError) -> Self {
        match e {
            LinkographyError::ProviderUnavailable(_) => Self::new(ErrorCode::ProviderUnavailable, e.to_string()),
            _ => Self::invalid(e.to_string()),
        }
    }
}

impl From<CriteriaError> for ApiError {
    fn from(e: CriteriaError) -> Self {
        match e {
            CriteriaError::InvalidInput(_) => Self::invalid(e.to_string()),
            CriteriaError::UnknownProtein(_) => Self::not_found(e.to_string()),
            _ => Self::new(ErrorCode::ProviderUnavailable, e.to_string()),
        }
    }
}
