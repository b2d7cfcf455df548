"""
Nefwall - JSON API entry point
"""
from flask import Flask
import os
import sys

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import config


def create_app():
    """Create Flask application"""
    app = Flask(__name__)

    app.config['SECRET_KEY'] = config.SECRET_KEY
    app.config['DEBUG'] = config.DEBUG

    # Register blueprints
    from app.routes import main
    app.register_blueprint(main)

    return app


if __name__ == '__main__':
    config.setup_logging()
    app = create_app()

    base = f"http://{config.HOST}:{config.PORT}"
    print("\n" + "=" * 50)
    print("Nefwall API")
    print("=" * 50)
    print(f"Walls:        {base}/api/walls?n=16")
    print(f"Classify:     {base}/api/classify?n=25&chi=2")
    print(f"Snapshot:     {base}/api/snapshot?n=25&chi=4&t=26/5")
    print(f"Components:   {base}/api/components?n=10&k=3&r=8&assume_shgh=1")
    print(f"Convergents:  {base}/api/convergents?n=10&count=7")
    print(f"Pell:         {base}/api/pell?n=13&N=1&limit=1")
    print(f"Cohomology:   {base}/api/cohomology?n=16&d=0&m=0")
    print("=" * 50 + "\n")

    app.run(host=config.HOST, port=config.PORT, debug=config.DEBUG)
