from posvote.cli import main

main()
