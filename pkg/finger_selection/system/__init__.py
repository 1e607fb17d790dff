"""Signal model of a synchronous multiuser IR-UWB link seen by a Rake receiver."""
