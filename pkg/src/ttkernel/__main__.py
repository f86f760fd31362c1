from ttkernel.cli import main

main()
