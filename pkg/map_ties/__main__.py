from map_ties.cli import main

main()
