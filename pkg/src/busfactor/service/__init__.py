"""HTTP service: artifact store, background jobs, and the API application."""
