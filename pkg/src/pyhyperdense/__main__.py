from pyhyperdense.cli import main

raise SystemExit(main())
