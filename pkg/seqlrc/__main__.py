from seqlrc.cli import main

main()
