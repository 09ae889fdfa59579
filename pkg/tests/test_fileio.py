import io
import os
import tempfile
from unittest import TestCase

from fractal_approximator.fileio import check_destination
from fractal_approximator.fileio import format_csv
from fractal_approximator.fileio import read_text
from fractal_approximator.fileio import write_text

FILES_DIR = os.path.join(os.path.dirname(__file__), 'files')


class TestFile(TestCase):
    def test_read(self):
        self.assertEqual(read_text(os.path.join(FILES_DIR, 'read.txt')), 'foobar')

        # file does not exist
        self.assertRaises(FileNotFoundError, read_text, os.path.join(FILES_DIR, 'foo'))
        # not a file
        self.assertRaises(IOError, read_text, FILES_DIR)

    def test_write(self):
        # path is not a file
        self.assertRaises(OSError, write_text, '', FILES_DIR, False)
        # file already exists
        with self.assertRaises(OSError) as cm:
            write_text('', os.path.join(FILES_DIR, 'read.txt'), False)
        self.assertIn("Use '-f' flag to overwrite", str(cm.exception))

        with tempfile.TemporaryDirectory() as tmp:
            # missing directories are created
            fp = os.path.join(tmp, 'out', 'run', 'write.txt')
            write_text('foo\nbar\n', fp)
            self.assertEqual(read_text(fp), 'foo\nbar\n')
            with io.open(fp, 'rb') as f:
                self.assertEqual(f.read(), b'foo\nbar\n')

            # overwrite
            write_text('baz', fp, force_overwrite=True)
            self.assertEqual(read_text(fp), 'baz')

    def test_read_encoding(self):
        with tempfile.TemporaryDirectory() as tmp:
            fp = os.path.join(tmp, 'bom.txt')
            with io.open(fp, 'w', encoding='utf8') as f:
                f.write('\ufeffx,y\n')
            self.assertEqual(read_text(fp), '\ufeffx,y\n')
            self.assertEqual(read_text(fp, encoding='utf-8-sig'), 'x,y\n')

    def test_check_destination(self):
        with self.assertRaises(OSError) as cm:
            check_destination(os.path.join(FILES_DIR, 'read.txt'))
        self.assertIn("Use '-f' flag to overwrite", str(cm.exception))
        self.assertRaises(OSError, check_destination, FILES_DIR, True)
        check_destination(os.path.join(FILES_DIR, 'read.txt'), force_overwrite=True)
        check_destination(os.path.join(FILES_DIR, 'missing', 'out.csv'))
        # nothing is created
        self.assertFalse(os.path.exists(os.path.join(FILES_DIR, 'missing')))

    def test_format_csv(self):
        self.assertEqual(format_csv(['k', 'alpha'], [['0', '0.5'], ['1', '-1']]), 'k,alpha\n0,0.5\n1,-1\n')
        self.assertEqual(format_csv(['x'], []), 'x\n')
