"""
Tests for the bundled data files and their checksums.
"""

import shutil

import pytest
from django.conf import settings
from django.test import SimpleTestCase, override_settings

from apps.core.exceptions import ChecksumMismatchError, WorkbenchError
from apps.groupkit.presentations import (
    dump_generator_matrices,
    dump_presentation,
    load_generator_matrices,
    parse_generator_matrices,
    parse_presentation,
)
from apps.workbench.datasets import (
    CO1_GENERATORS,
    CO1_PRESENTATION,
    QUOTED_CONSTANTS,
    S3_GENERATORS,
    S3_PRESENTATION,
    co1_presentation,
    co1_rep,
    data_path,
    quoted_constants,
    recorded_checksums,
    verify_all,
    verify_asset,
)

ASSETS = (CO1_GENERATORS, CO1_PRESENTATION, QUOTED_CONSTANTS, S3_GENERATORS, S3_PRESENTATION)


class TestChecksums(SimpleTestCase):
    """The manifest matches the checked-in assets."""

    def test_every_asset_listed(self):
        """Test the manifest lists exactly the bundled assets."""
        self.assertEqual(sorted(recorded_checksums()), sorted(ASSETS))

    def test_verify_all(self):
        """Test every asset verifies."""
        self.assertEqual(verify_all(), {name: True for name in sorted(ASSETS)})

    def test_unknown_asset(self):
        """Test an unlisted asset is refused."""
        with self.assertRaises(WorkbenchError):
            verify_asset('missing.txt')


class TestCo1Dataset(SimpleTestCase):
    """The nine 24x24 matrices and the 48 relators."""

    def test_shape(self):
        """Test nine generators a..i acting on F2^24."""
        rep = co1_rep()
        self.assertEqual(co1_presentation().generators, tuple('abcdefghi'))
        self.assertEqual(len(co1_presentation().relators), 48)
        self.assertEqual((rep.dim, rep.modulus), (24, 2))

    def test_involutions(self):
        """Test every generator image squares to the identity."""
        for name, image in zip(co1_presentation().generators, co1_rep().images):
            self.assertTrue(image.matmul(image).is_identity(), name)

    def test_presentation_round_trip(self):
        """Test the presentation survives dump and parse."""
        presentation = co1_presentation()
        parsed = parse_presentation(dump_presentation(presentation), name=presentation.name)
        self.assertEqual(parsed, presentation)

    def test_generators_round_trip(self):
        """Test the generator file survives parse and dump."""
        for name in (CO1_GENERATORS, S3_GENERATORS):
            images = load_generator_matrices(data_path(name))
            self.assertEqual(parse_generator_matrices(dump_generator_matrices(images)), images)

    def test_quoted_constants_cited(self):
        """Test every quoted constant carries a value and a citation."""
        for key, entry in quoted_constants().items():
            self.assertEqual(set(entry), {'value', 'citation'}, key)
            self.assertTrue(entry['citation'], key)


# ===== FIXTURES =====

@pytest.fixture
def drifted_data(tmp_path):
    """A copy of the data directory with one bit of generator a flipped."""
    target = tmp_path / 'data'
    shutil.copytree(settings.WORKBENCH_DATA_DIR, target)
    path = target / CO1_GENERATORS
    text = path.read_text()
    path.write_text(text.replace('\n010000000000000000000000\n',
                                 '\n110000000000000000000000\n', 1))
    recorded_checksums.cache_clear()
    yield target
    recorded_checksums.cache_clear()


@pytest.mark.unit
def test_drift_detected(drifted_data):
    """Test a flipped bit in the Co1 matrices fails the checksum."""
    with override_settings(WORKBENCH_DATA_DIR=drifted_data):
        with pytest.raises(ChecksumMismatchError):
            verify_asset(CO1_GENERATORS)
        assert verify_asset(S3_GENERATORS) == drifted_data / S3_GENERATORS


@pytest.mark.unit
def test_missing_manifest(tmp_path):
    """Test a data directory without checksums.json is refused."""
    recorded_checksums.cache_clear()
    try:
        with override_settings(WORKBENCH_DATA_DIR=tmp_path):
            with pytest.raises(WorkbenchError):
                verify_asset(S3_PRESENTATION)
    finally:
        recorded_checksums.cache_clear()
