import sys

from fractal_approximator.cli import main

sys.exit(main())
