//! HTTP facade over the core crate: sessions, lazily annotated subgraphs,
//! PPI details, bookmarks, event logging and linkography analysis.

pub mod error;
pub mod openapi;
pub mod remote;
pub mod routes;
pub mod state;
pub mod views;

use std::future::Future;

pub use error::{ApiError, ErrorCode};
pub use routes::router;
pub use state::{AppState, Providers, ServerConfig};

/// Serve until `shutdown` resolves.
pub async fn serve(
    listener: tokio::net::TcpListener,
    state: AppState,
    shutdown: impl Future<Output = ()> + Send + 'static,
) -> std::io::Result<()> {
    axum::serve(listener, router(state))
        .with_graceful_shutdown(shutdown)
        .await
}
