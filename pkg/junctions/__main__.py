from junctions.cli import main

main()
