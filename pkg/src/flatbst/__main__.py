from flatbst.cli import run

run()
