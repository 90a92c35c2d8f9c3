"""
Bundled data files: presentations, generator matrices and quoted constants.

Every asset is listed in checksums.json; loaders verify the digest before
parsing so that silent edits to the data are reported.
"""

import json
import logging
from functools import lru_cache

from django.conf import settings

from apps.core.exceptions import ChecksumMismatchError, WorkbenchError
from apps.core.utils.helpers import sha256_file
from apps.groupkit.presentations import images_for, load_generator_matrices, load_presentation
from apps.repfun.representations import MatrixRep

logger = logging.getLogger('apps.workbench')

CHECKSUM_FILE = 'checksums.json'
CO1_PRESENTATION = 'co1_presentation.txt'
CO1_GENERATORS = 'co1_generators.txt'
S3_PRESENTATION = 's3_presentation.txt'
S3_GENERATORS = 's3_generators.txt'
QUOTED_CONSTANTS = 'quoted_constants.json'


def data_path(name):
    return settings.WORKBENCH_DATA_DIR / name


@lru_cache(maxsize=1)
def recorded_checksums():
    path = data_path(CHECKSUM_FILE)
    if not path.exists():
        raise WorkbenchError(f"Checksum manifest {path} is missing")
    return json.loads(path.read_text())


def verify_asset(name):
    """
    Compare an asset's sha256 with the manifest.

    Raises:
        ChecksumMismatchError: If the digests differ
        WorkbenchError: If the asset is not listed
    """
    expected = recorded_checksums().get(name)
    if expected is None:
        raise WorkbenchError(f"Asset {name} is not listed in {CHECKSUM_FILE}")
    actual = sha256_file(data_path(name))
    if actual != expected:
        raise ChecksumMismatchError(name, expected, actual)
    logger.debug(f"Asset {name} verified")
    return data_path(name)


def verify_all():
    """{name: True} for every listed asset; raises on the first drift."""
    return {name: bool(verify_asset(name)) for name in sorted(recorded_checksums())}


def bundled_presentation(name):
    return load_presentation(verify_asset(name))


def bundled_rep(presentation_name, generators_name, label=''):
    """MatrixRep of a bundled presentation, relators verified."""
    presentation = bundled_presentation(presentation_name)
    images = images_for(presentation, load_generator_matrices(verify_asset(generators_name)))
    return MatrixRep.from_generator_images(presentation, images, name=label or presentation.name)


@lru_cache(maxsize=1)
def co1_presentation():
    return bundled_presentation(CO1_PRESENTATION)


@lru_cache(maxsize=1)
def co1_rep():
    """Co1 on the Leech lattice mod 2 (dimension 24 over F_2)."""
    return bundled_rep(CO1_PRESENTATION, CO1_GENERATORS, label='Co1 on V')


@lru_cache(maxsize=1)
def s3_rep():
    """S3 on the reduced permutation module over F_2, the small oracle dataset."""
    return bundled_rep(S3_PRESENTATION, S3_GENERATORS, label='S3 on F2^2')


@lru_cache(maxsize=1)
def quoted_constants():
    """Quoted constants used where no computation is offered."""
    return json.loads(verify_asset(QUOTED_CONSTANTS).read_text())
