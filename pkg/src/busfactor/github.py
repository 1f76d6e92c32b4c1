"""Hosting-provider REST client: bot discovery, repository search, auth token.

Every provider interaction lives behind GitHubProvider so tests (and the
service) can swap in a fake; no bus factor math ever touches the network.
"""

from __future__ import annotations

import logging
import os
import threading
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Protocol

import httpx

from busfactor.errors import InputError, NetworkError, RateLimitError, RepoNotFoundError

logger = logging.getLogger(__name__)

API_ROOT = "https://api.github.com"
NOREPLY_DOMAIN = "users.noreply.github.com"
PAGE_SIZE = 100
MAX_RETRIES = 3
SEARCH_LIMIT_MAX = 50


def auth_token(env: Mapping[str, str] | None = None) -> str | None:
    """GH_TOKEN from the environment, trimmed; None means anonymous."""
    token = (env if env is not None else os.environ).get("GH_TOKEN", "")
    token = token.strip()
    return token or None


@dataclass(frozen=True)
class RepoCoordinates:
    owner: str
    name: str
    clone_url: str
    default_branch: str | None = None

    def __post_init__(self):
        for value in (self.owner, self.name):
            if not value or "/" in value:
                raise InputError(f"bad repository coordinates: {self.owner!r}/{self.name!r}")

    @property
    def slug(self) -> str:
        return f"{self.owner}/{self.name}"


@dataclass(frozen=True)
class BotHint:
    """Identity hints for one bot account: login plus any known emails."""

    login: str
    emails: frozenset[str] = field(default_factory=frozenset)


def match_bot_authors(hints: Iterable[BotHint], author_ids: Iterable[str]) -> set[str]:
    """Canonical author ids that belong to the hinted bot accounts.

    Matches exact hinted emails first, then the login part of provider
    noreply addresses ("{id}+{login}@users.noreply..."), then bare logins
    (authors keyed by name because their commits carried no email).
    """
    logins = {h.login.lower() for h in hints}
    emails = {e.lower() for h in hints for e in h.emails}
    matched: set[str] = set()
    for author_id in author_ids:
        if author_id in emails:
            matched.add(author_id)
            continue
        local, _, domain = author_id.rpartition("@")
        if local and domain == NOREPLY_DOMAIN:
            if local.rpartition("+")[2] in logins:
                matched.add(author_id)
            continue
        if author_id in logins:
            matched.add(author_id)
    return matched


class Provider(Protocol):
    """What the job pipeline needs from a hosting provider."""

    def coordinates(self, owner: str, name: str) -> RepoCoordinates: ...

    def list_bots(self, coords: RepoCoordinates) -> frozenset[BotHint]: ...

    def search_repos(self, query: str, limit: int) -> list[RepoCoordinates]: ...


class GitHubProvider:
    """REST v3 client; paginates at 100/page with bounded backoff on throttling."""

    def __init__(
        self,
        token: str | None = None,
        api_root: str = API_ROOT,
        transport: httpx.BaseTransport | None = None,
        sleep: Callable[[float], None] = time.sleep,
    ):
        headers = {"Accept": "application/vnd.github+json"}
        if token:
            headers["Authorization"] = f"Bearer {token}"
        self._client = httpx.Client(
            base_url=api_root, headers=headers, timeout=30.0, transport=transport
        )
        self._sleep = sleep
        # One request at a time toward the provider: jobs share this client
        # and parallel bursts would just trip the rate limiter sooner.
        self._request_lock = threading.Lock()

    def close(self) -> None:
        self._client.close()

    def __enter__(self) -> "GitHubProvider":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    def coordinates(self, owner: str, name: str) -> RepoCoordinates:
        return RepoCoordinates(
            owner=owner, name=name, clone_url=f"https://github.com/{owner}/{name}.git"
        )

    def _get(self, path: str, params: dict) -> httpx.Response:
        last_wait = 1.0
        with self._request_lock:
            for attempt in range(MAX_RETRIES + 1):
                try:
                    response = self._client.get(path, params=params)
                except httpx.TransportError as exc:
                    raise NetworkError(f"provider unreachable: {exc}", retryable=True) from exc
                if response.status_code in (403, 429) and _is_rate_limited(response):
                    if attempt == MAX_RETRIES:
                        raise RateLimitError(
                            "provider rate limit exhausted", retry_after=_retry_after(response)
                        )
                    last_wait = _retry_after(response) or 2.0**attempt
                    self._sleep(last_wait)
                    continue
                return response
        raise RateLimitError("provider rate limit exhausted", retry_after=last_wait)

    def list_bots(self, coords: RepoCoordinates) -> frozenset[BotHint]:
        """Identity hints for every contributor whose account type is Bot.

        Offline providers yield an empty set with a warning so the analysis
        can proceed without bot exclusion.
        """
        hints: set[BotHint] = set()
        page = 1
        while True:
            try:
                response = self._get(
                    f"/repos/{coords.owner}/{coords.name}/contributors",
                    params={"per_page": PAGE_SIZE, "page": page},
                )
            except NetworkError as exc:
                if isinstance(exc, RateLimitError):
                    raise
                logger.warning(
                    "bot listing unavailable for %s (%s); continuing without bot exclusion",
                    coords.slug,
                    exc,
                )
                return frozenset()
            if response.status_code == 404:
                raise RepoNotFoundError(f"repo not found: {coords.slug}")
            if response.status_code >= 400:
                raise NetworkError(
                    f"contributor listing failed ({response.status_code}): {response.text}"
                )
            contributors = response.json()
            for contributor in contributors:
                if contributor.get("type") != "Bot":
                    continue
                login = contributor.get("login", "")
                if not login:
                    continue
                emails = frozenset(
                    e for e in (contributor.get("email"),) if isinstance(e, str) and e
                )
                hints.add(BotHint(login=login, emails=emails))
            if len(contributors) < PAGE_SIZE:
                return frozenset(hints)
            page += 1

    def search_repos(self, query: str, limit: int) -> list[RepoCoordinates]:
        if not query.strip():
            raise InputError("search query must be non-empty")
        if not 1 <= limit <= SEARCH_LIMIT_MAX:
            raise InputError(f"limit must be in [1, {SEARCH_LIMIT_MAX}], got {limit}")
        response = self._get("/search/repositories", params={"q": query, "per_page": limit})
        if response.status_code >= 400:
            raise NetworkError(f"search failed ({response.status_code}): {response.text}")
        results = []
        for item in response.json().get("items", [])[:limit]:
            results.append(
                RepoCoordinates(
                    owner=item["owner"]["login"],
                    name=item["name"],
                    clone_url=item.get("clone_url")
                    or f"https://github.com/{item['owner']['login']}/{item['name']}.git",
                    default_branch=item.get("default_branch"),
                )
            )
        return results


def _is_rate_limited(response: httpx.Response) -> bool:
    if response.headers.get("X-RateLimit-Remaining") == "0":
        return True
    if "Retry-After" in response.headers:
        return True
    return "rate limit" in response.text.lower()


def _retry_after(response: httpx.Response) -> float | None:
    value = response.headers.get("Retry-After")
    if value is None:
        return None
    try:
        return float(value)
    except ValueError:
        return None


class NullProvider:
    """Offline provider: constructs coordinates, finds no bots, cannot search."""

    def coordinates(self, owner: str, name: str) -> RepoCoordinates:
        return RepoCoordinates(
            owner=owner, name=name, clone_url=f"https://github.com/{owner}/{name}.git"
        )

    def list_bots(self, coords: RepoCoordinates) -> frozenset[BotHint]:
        return frozenset()

    def search_repos(self, query: str, limit: int) -> list[RepoCoordinates]:
        raise NetworkError("search requires a configured provider")
