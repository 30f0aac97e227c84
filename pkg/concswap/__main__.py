from concswap.cli import main

main()
