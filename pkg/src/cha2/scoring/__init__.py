from .client import BATCH_LIMIT, HANDSHAKE, ExternalScorer
from .proxy import (
    DesirabilityCurve,
    ProxyScoreConfig,
    ads,
    load_proxy_config,
    proxy_score,
)

__all__ = [
    "BATCH_LIMIT",
    "HANDSHAKE",
    "DesirabilityCurve",
    "ExternalScorer",
    "ProxyScoreConfig",
    "ads",
    "load_proxy_config",
    "proxy_score",
]
