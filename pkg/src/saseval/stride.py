"""Mapping between STRIDE threat categories and concrete attack types.

The forward map is the methodology's fixed many-to-many table; the reverse
map is derived from it, so the two stay consistent by construction. Row
order inside each category is significant: derivation emits candidates in
this order.
"""

from __future__ import annotations

from .model import AttackType, ThreatType

THREAT_TO_ATTACKS: dict[ThreatType, tuple[AttackType, ...]] = {
    ThreatType.SPOOFING: (
        AttackType.FAKE_MESSAGES,
        AttackType.SPOOFING,
    ),
    ThreatType.TAMPERING: (
        AttackType.CORRUPT_DATA_OR_CODE,
        AttackType.DELIVER_MALWARE,
        AttackType.ALTER,
        AttackType.INJECT,
        AttackType.CORRUPT_MESSAGES,
        AttackType.MANIPULATE,
        AttackType.CONFIG_CHANGE,
    ),
    ThreatType.REPUDIATION: (
        AttackType.REPLAY,
        AttackType.REPUDIATION_OF_MESSAGE_TRANSMISSION,
        AttackType.DELAY,
    ),
    ThreatType.INFORMATION_DISCLOSURE: (
        AttackType.LISTEN,
        AttackType.INTERCEPT,
        AttackType.EAVESDROPPING,
        AttackType.ILLEGAL_ACQUISITION,
        AttackType.COVERT_CHANNEL,
        AttackType.CONFIG_CHANGE,
    ),
    ThreatType.DENIAL_OF_SERVICE: (
        AttackType.DISABLE,
        AttackType.DENIAL_OF_SERVICE,
        AttackType.JAMMING,
    ),
    ThreatType.ELEVATION_OF_PRIVILEGE: (
        AttackType.ILLEGAL_ACQUISITION,
        AttackType.GAIN_ELEVATED_ACCESS,
        AttackType.GAIN_UNAUTHORIZED_ACCESS,
    ),
}


def _build_reverse() -> dict[AttackType, tuple[ThreatType, ...]]:
    reverse: dict[AttackType, list[ThreatType]] = {a: [] for a in AttackType}
    for threat in ThreatType:
        for attack in THREAT_TO_ATTACKS[threat]:
            reverse[attack].append(threat)
    return {a: tuple(ts) for a, ts in reverse.items()}


ATTACK_TO_THREATS: dict[AttackType, tuple[ThreatType, ...]] = _build_reverse()


def attack_types_for(threat: ThreatType) -> tuple[AttackType, ...]:
    """Attack types reachable from a threat category, in table row order."""
    return THREAT_TO_ATTACKS[threat]


def threat_types_for(attack: AttackType) -> tuple[ThreatType, ...]:
    """Threat categories that can manifest as the given attack type."""
    return ATTACK_TO_THREATS[attack]
